#include "primeform/gandhi.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "primeform/core/errors.hpp"

namespace primeform {

ExactRational geometric_divisibility(std::uint64_t d) {
  if (d == 0) throw std::domain_error("geometric_divisibility: d must be >= 1");
  mpz_class den = BigNatural::power_of_two(d).mpz() - 1;
  return ExactRational(mpz_class(1), den);
}

ExactRational pi_n_exact(std::size_t n, const PrimeTable& table, bool allow_large) {
  if (n == 0) throw std::domain_error("pi_n_exact: n must be >= 1");
  if (n > kGandhiAbsoluteMax) {
    throw ResourceLimitError("pi_n_exact: n = " + std::to_string(n) + " exceeds the hard ceiling " +
                             std::to_string(kGandhiAbsoluteMax) + " (subset exponents overflow 64 bits)");
  }
  if (n > kGandhiFeasibleMax && !allow_large) {
    throw ResourceLimitError("pi_n_exact: n = " + std::to_string(n) + " requires 2^" + std::to_string(n) +
                             " - 1 = " + std::to_string((std::uint64_t{1} << n) - 1) +
                             " subset terms with exponents up to P_n; limit is n <= " +
                             std::to_string(kGandhiFeasibleMax) + " without the large-Gandhi override");
  }
  std::vector<std::uint64_t> primes(n);
  for (std::size_t i = 0; i < n; ++i) primes[i] = table.prime(i + 1);

  ExactRational sum(1);
  std::uint64_t exponent = 1;
  std::size_t size = 0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < subsets; ++i) {
    const int bit = std::countr_zero(i);
    gray ^= std::uint64_t{1} << bit;
    if (gray & (std::uint64_t{1} << bit)) {
      exponent *= primes[bit];
      ++size;
    } else {
      exponent /= primes[bit];
      --size;
    }
    const ExactRational term = geometric_divisibility(exponent);
    if (size % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

std::uint64_t extract_prime(const ExactRational& pi_n) {
  const ExactRational bracket = pi_n - ExactRational(mpz_class(1), mpz_class(2));
  if (bracket.sign() <= 0) throw InvariantViolation("extract_prime: pi_n - 1/2 is not positive");
  const ExactRational one(1);
  const ExactRational two(2);
  // Jump close to the answer using bit lengths, then settle by doubling.
  const long den_bits = static_cast<long>(mpz_sizeinbase(bracket.denominator().get_mpz_t(), 2));
  const long num_bits = static_cast<long>(mpz_sizeinbase(bracket.numerator().get_mpz_t(), 2));
  std::uint64_t m = den_bits - num_bits > 1 ? static_cast<std::uint64_t>(den_bits - num_bits - 1) : 0;
  ExactRational scaled = bracket.times_pow2(m);
  while (scaled <= one) {
    scaled = scaled.times_pow2(1);
    ++m;
  }
  if (!(scaled < two)) {
    throw InvariantViolation("extract_prime: no m with 1 < 2^m (pi_n - 1/2) < 2");
  }
  return m;
}

FloatExtraction log2_extraction_float(const ExactRational& pi_n) {
  FloatExtraction out;
  out.bracket = pi_n.to_double() - 0.5;
  if (!(out.bracket > 0.0)) return out;
  const double v = std::floor(1.0 - std::log2(out.bracket));
  if (!(v >= 1.0) || !std::isfinite(v)) return out;
  out.m = static_cast<std::uint64_t>(v);
  return out;
}

GandhiEvaluation evaluate_gandhi(std::size_t n, const PrimeTable& table, bool allow_large) {
  GandhiEvaluation out;
  out.n = n;
  out.pi_n = pi_n_exact(n, table, allow_large);
  out.subset_count = std::uint64_t{1} << n;
  out.bracket = out.pi_n - ExactRational(mpz_class(1), mpz_class(2));
  out.extracted_m = extract_prime(out.pi_n);
  out.theta = out.bracket.times_pow2(out.extracted_m) - ExactRational(1);
  out.float_extraction = log2_extraction_float(out.pi_n);
  return out;
}

bool gandhi_sandwich_holds(const ExactRational& pi_n, std::uint64_t p_next) {
  const ExactRational half(mpz_class(1), mpz_class(2));
  const ExactRational lead = ExactRational::reciprocal(BigNatural::power_of_two(p_next));
  const ExactRational tail = ExactRational::reciprocal(BigNatural::power_of_two(p_next + 1));
  return half + lead < pi_n && pi_n < half + lead + tail;
}

double monte_carlo_pi(std::size_t n, std::uint64_t samples, std::uint64_t seed, const PrimeTable& table) {
  if (samples < 10000) throw std::domain_error("monte_carlo_pi: samples must be >= 10^4");
  if (n == 0) throw std::domain_error("monte_carlo_pi: n must be >= 1");
  std::vector<std::uint64_t> primes(n);
  for (std::size_t i = 0; i < n; ++i) primes[i] = table.prime(i + 1);

  std::mt19937_64 engine(seed);
  std::uint64_t coprime = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double u = static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;
    const double k_real = std::ceil(-std::log2(u));
    const std::uint64_t k = k_real < 1.0 ? 1 : static_cast<std::uint64_t>(k_real);
    bool ok = true;
    for (auto p : primes) {
      if (k % p == 0) {
        ok = false;
        break;
      }
    }
    coprime += ok ? 1 : 0;
  }
  return static_cast<double>(coprime) / static_cast<double>(samples);
}

}  // namespace primeform
