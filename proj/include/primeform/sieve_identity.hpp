#pragma once

#include <cstdint>
#include <vector>

#include "primeform/core/exact.hpp"
#include "primeform/core/prime_table.hpp"

namespace primeform {

/// Machine epsilon used by the float-vs-exact probe.
inline constexpr double kMachineEpsilon = 2.22e-16;
/// A float evaluation is flagged when it drifts this far from the exact sum.
inline constexpr double kFloatGapThreshold = 1e3 * kMachineEpsilon;

/// Coprimality filter chi_n(m) = sum over d | gcd(m, P_n) of mu(d).
///
/// Holds P_n so repeated queries for the same n do not rebuild it.
class CoprimalityFilter {
 public:
  /// Throws std::out_of_range if p_n is not in the table.
  CoprimalityFilter(const PrimeTable& table, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::uint64_t largest_prime() const noexcept { return largest_prime_; }
  const BigNatural& primorial() const noexcept { return primorial_; }

  /// Moebius divisor sum over gcd(m, P_n).
  int reference(std::uint64_t m) const;
  /// gcd(m, P_n) == 1, decided from the smallest prime factor of m.
  int fast(std::uint64_t m) const;
  int operator()(std::uint64_t m) const { return fast(m); }

 private:
  const PrimeTable* table_;
  std::size_t n_;
  std::uint64_t largest_prime_;
  BigNatural primorial_;
};

/// chi_n(m) through the fast path; builds a filter per call.
int chi(std::uint64_t m, std::size_t n, const PrimeTable& table);

/// Least m > 1 with chi_n(m) = 1, scanning [2, 2 p_n].
/// Throws std::out_of_range if 2 p_n exceeds the table and InvariantViolation
/// if the scan finds no survivor.
std::uint64_t next_prime_via_chi(std::size_t n, const PrimeTable& table);

struct CertificateReport {
  std::size_t n = 0;
  std::uint64_t p_n = 0;
  std::uint64_t p_next = 0;
  ExactRational s_exact;
  mpz_class floor_exact;
  ExactRational delta;
  double s_float64 = 0.0;
  long floor_float64 = 0;
  /// |s_float64 - s_exact|, evaluated exactly then rounded.
  double float_gap = 0.0;
  /// floor_float64 != 1 or float_gap > kFloatGapThreshold.
  bool flagged = false;
};

/// S_n = sum_{m <= 2 p_n} chi_n(m) / m in exact and in 64-bit arithmetic.
CertificateReport harmonic_certificate(std::size_t n, const PrimeTable& table);

/// Certificates for n = 1..n_max.
std::vector<CertificateReport> delta_precision_probe(std::size_t n_max, const PrimeTable& table);

struct DeltaBounds {
  bool lower_holds = false;  ///< delta >= 1 / p_next, exact
  bool upper_holds = false;  ///< delta - 1/p_next < ln 2 (+ slack)
};

/// Checks 1/p_{n+1} <= delta_n < 1/p_{n+1} + ln 2. The right side compares the
/// exact remainder against a 30-digit upper bound of ln 2 plus `slack`.
DeltaBounds check_delta_bounds(const CertificateReport& report, double slack = 1e-12);

/// 1/p_{n+1} + ln 2. Exceeds 1 at n = 1, where the floor identity still holds.
double intermediate_bound(std::size_t n, const PrimeTable& table);

}  // namespace primeform
