#include "primeform/sieve_identity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "primeform/core/errors.hpp"

namespace primeform {

namespace {

// ln 2 rounded up at 30 decimal places.
const ExactRational& ln2_upper() {
  static const ExactRational value = ExactRational::parse("693147180559945309417232121459/1000000000000000000000000000000");
  return value;
}

void require_scan_range(std::size_t n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("sieve identity: n must be >= 1");
  const std::uint64_t p_n = table.prime(n);
  if (2 * p_n > table.limit()) {
    throw std::out_of_range("sieve identity: n = " + std::to_string(n) + " needs sieve limit >= " +
                            std::to_string(2 * p_n) + " (have " + std::to_string(table.limit()) + ")");
  }
}

}  // namespace

CoprimalityFilter::CoprimalityFilter(const PrimeTable& table, std::size_t n)
    : table_(&table), n_(n), largest_prime_(table.prime(n)), primorial_(primeform::primorial(table, n)) {}

int CoprimalityFilter::reference(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("chi: m must be >= 1");
  const std::uint64_t g = primorial_.gcd_with(m);
  int total = 0;
  for (std::uint64_t d = 1; d * d <= g; ++d) {
    if (g % d != 0) continue;
    total += table_->moebius(d);
    if (d * d != g) total += table_->moebius(g / d);
  }
  return total;
}

int CoprimalityFilter::fast(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("chi: m must be >= 1");
  if (m == 1) return 1;
  return table_->smallest_factor(m) > largest_prime_ ? 1 : 0;
}

int chi(std::uint64_t m, std::size_t n, const PrimeTable& table) { return CoprimalityFilter(table, n)(m); }

std::uint64_t next_prime_via_chi(std::size_t n, const PrimeTable& table) {
  require_scan_range(n, table);
  const CoprimalityFilter filter(table, n);
  const std::uint64_t bound = 2 * filter.largest_prime();
  for (std::uint64_t m = 2; m <= bound; ++m) {
    if (filter(m) == 1) return m;
  }
  throw InvariantViolation("next_prime_via_chi: no survivor in [2, " + std::to_string(bound) +
                           "] for n = " + std::to_string(n));
}

CertificateReport harmonic_certificate(std::size_t n, const PrimeTable& table) {
  require_scan_range(n, table);
  const CoprimalityFilter filter(table, n);
  const std::uint64_t bound = 2 * filter.largest_prime();

  CertificateReport report;
  report.n = n;
  report.p_n = filter.largest_prime();

  std::vector<std::uint64_t> survivors;
  double s_float = 0.0;
  for (std::uint64_t m = 1; m <= bound; ++m) {
    const int c = filter(m);
    // Ascending round-to-nearest accumulation, zero terms included.
    s_float += static_cast<double>(c) / static_cast<double>(m);
    if (c == 1) {
      survivors.push_back(m);
      if (m > 1 && report.p_next == 0) report.p_next = m;
    }
  }
  if (report.p_next == 0) {
    throw InvariantViolation("harmonic_certificate: no survivor > 1 for n = " + std::to_string(n));
  }

  report.s_exact = sum_of_reciprocals(survivors);
  report.floor_exact = report.s_exact.floor();
  report.delta = report.s_exact - ExactRational(1);
  report.s_float64 = s_float;
  report.floor_float64 = static_cast<long>(std::floor(s_float));
  ExactRational gap = ExactRational::from_double(s_float) - report.s_exact;
  if (gap.sign() < 0) gap = -gap;
  report.float_gap = gap.to_double();
  report.flagged = report.floor_float64 != 1 || report.float_gap > kFloatGapThreshold;
  return report;
}

std::vector<CertificateReport> delta_precision_probe(std::size_t n_max, const PrimeTable& table) {
  if (n_max == 0) throw std::domain_error("delta_precision_probe: n_max must be >= 1");
  std::vector<CertificateReport> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(harmonic_certificate(n, table));
  return out;
}

DeltaBounds check_delta_bounds(const CertificateReport& report, double slack) {
  const ExactRational tail_free = ExactRational(mpz_class(1), mpz_class(report.p_next));
  const ExactRational remainder = report.delta - tail_free;
  DeltaBounds out;
  out.lower_holds = remainder.sign() >= 0;
  out.upper_holds = remainder < ln2_upper() + ExactRational::from_double(slack);
  return out;
}

double intermediate_bound(std::size_t n, const PrimeTable& table) {
  return 1.0 / static_cast<double>(table.prime(n + 1)) + std::log(2.0);
}

}  // namespace primeform
