#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "primeform/core/numeric.hpp"
#include "primeform/survival.hpp"

namespace primeform {

namespace {

double growth_factor(std::uint64_t k) {
  const double kk = static_cast<double>(k);
  const double l = std::log(kk);
  return 1.0 + 1.0 / (kk * l - std::log(l));
}

}  // namespace

MertensValue mertens_product(std::size_t n, const PrimeTable& table, const SurvivalParams& params) {
  if (n == 0) throw std::domain_error("mertens_product: n must be >= 1");
  double product = 1.0;
  for (std::size_t k = 1; k <= n; ++k) product *= 1.0 - 1.0 / static_cast<double>(table.prime(k));
  return {product, product * std::log(static_cast<double>(table.prime(n))) / params.density_efficiency()};
}

std::vector<MertensValue> mertens_sweep(std::size_t n_max, const PrimeTable& table, const SurvivalParams& params) {
  if (n_max == 0) throw std::domain_error("mertens_sweep: n_max must be >= 1");
  table.prime(n_max);
  std::vector<MertensValue> out;
  out.reserve(n_max);
  const double efficiency = params.density_efficiency();
  double product = 1.0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    const double p = static_cast<double>(table.prime(k));
    product *= 1.0 - 1.0 / p;
    out.push_back({product, product * std::log(p) / efficiency});
  }
  return out;
}

EntropyValue entropy(std::uint64_t n, const SurvivalParams& params) {
  if (n < 3) throw std::domain_error("entropy: n must be >= 3");
  EntropyValue out;
  CompensatedSum<double> sum;
  for (std::uint64_t k = 2; k <= n; ++k) {
    const double prob = 1.0 / std::log(static_cast<double>(k));
    sum += -prob * std::log(prob);
  }
  out.sum_form = sum.value();
  out.integral_form = integrate_adaptive_simpson(
      [](double x) {
        const double l = std::log(x);
        return std::log(l) / l;
      },
      2.0, static_cast<double>(n), params.entropy_tolerance);
  return out;
}

EstimatorRecord survival_estimate(std::size_t n, const SurvivalParams& params, const PrimeTable& table) {
  if (n < 3) throw std::domain_error("survival_estimate: n must be >= 3");
  double product = 1.0;
  for (std::uint64_t k = 2; k <= n; ++k) product *= growth_factor(k);
  const double nn = static_cast<double>(n);
  return make_record(n, table.prime(n), nn * std::log(nn) * product * params.density_efficiency());
}

std::vector<EstimatorRecord> survival_sweep(std::size_t n_lo, std::size_t n_hi, const SurvivalParams& params,
                                            const PrimeTable& table) {
  if (n_lo < 3) throw std::domain_error("survival_sweep: n must be >= 3");
  if (n_hi < n_lo) throw std::domain_error("survival_sweep: empty range");
  table.prime(n_hi);
  std::vector<EstimatorRecord> out;
  out.reserve(n_hi - n_lo + 1);
  const double efficiency = params.density_efficiency();
  double product = 1.0;
  for (std::uint64_t k = 2; k <= n_hi; ++k) {
    product *= growth_factor(k);
    if (k < n_lo) continue;
    const double kk = static_cast<double>(k);
    out.push_back(make_record(k, table.prime(k), kk * std::log(kk) * product * efficiency));
  }
  return out;
}

Capacity capacity(std::uint64_t z, const PrimeTable& table) {
  if (z < 2) throw std::domain_error("capacity: z must be >= 2");
  if (z - 1 > table.limit()) {
    throw std::out_of_range("capacity: z = " + std::to_string(z) + " exceeds sieve limit");
  }
  CompensatedSum<double> v;
  for (std::uint64_t d = 1; d < z; ++d) {
    if (table.moebius(d) == 0) continue;
    v += 1.0 / static_cast<double>(table.totient(d));
  }
  return {v.value(), 1.0 / v.value()};
}

namespace {

std::uint64_t isqrt(std::uint64_t v) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

EstimatorRecord capacity_estimate(std::size_t n, const PrimeTable& table, CapacityMode mode) {
  if (n < 2) throw std::domain_error("capacity_estimate: n must be >= 2");
  const std::uint64_t p_n = table.prime(n);
  std::uint64_t z = 0;
  if (mode == CapacityMode::kOracle) {
    z = isqrt(p_n);
  } else {
    const double nn = static_cast<double>(n);
    z = static_cast<std::uint64_t>(std::sqrt(nn * std::log(nn)));
    for (int iter = 0; iter < 2; ++iter) {
      const double guess = nn * capacity(std::max<std::uint64_t>(z, 2), table).v;
      z = static_cast<std::uint64_t>(std::sqrt(guess));
    }
  }
  z = std::max<std::uint64_t>(z, 2);
  return make_record(n, p_n, static_cast<double>(n) * capacity(z, table).v);
}

double brun_partial(std::uint64_t x_bound, const PrimeTable& table) {
  if (x_bound > table.limit()) {
    throw std::out_of_range("brun_partial: X = " + std::to_string(x_bound) + " exceeds sieve limit " +
                            std::to_string(table.limit()));
  }
  double sum = 0.0;
  const auto primes = table.primes();
  for (std::size_t i = 1; i < primes.size() && primes[i] <= x_bound; ++i) {
    if (primes[i] - primes[i - 1] != 2) continue;
    sum += 1.0 / static_cast<double>(primes[i - 1]) + 1.0 / static_cast<double>(primes[i]);
  }
  return sum;
}

std::vector<std::pair<std::uint64_t, double>> brun_steps(std::uint64_t x_bound, const PrimeTable& table) {
  if (x_bound > table.limit()) {
    throw std::out_of_range("brun_steps: X = " + std::to_string(x_bound) + " exceeds sieve limit " +
                            std::to_string(table.limit()));
  }
  std::vector<std::pair<std::uint64_t, double>> out;
  double sum = 0.0;
  for (auto [p, q] : table.twin_pairs()) {
    if (q > x_bound) break;
    sum += 1.0 / static_cast<double>(p) + 1.0 / static_cast<double>(q);
    out.emplace_back(q, sum);
  }
  return out;
}

}  // namespace primeform
