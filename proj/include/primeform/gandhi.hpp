#pragma once

#include <cstdint>
#include <optional>

#include "primeform/core/exact.hpp"
#include "primeform/core/prime_table.hpp"

namespace primeform {

/// Largest n evaluated without an explicit override. The dominant term at
/// n = 7 has exponent P_7 = 510510; n = 8 needs ~9.7 Mbit integers.
inline constexpr std::size_t kGandhiFeasibleMax = 7;
/// Hard ceiling: beyond this the subset exponent P_n overflows 64 bits.
inline constexpr std::size_t kGandhiAbsoluteMax = 15;

/// P(A_d) = 1 / (2^d - 1) under the geometric(1/2) law on the positive integers.
ExactRational geometric_divisibility(std::uint64_t d);

/// pi_n = 1 + sum over nonempty subsets S of {p_1..p_n} of (-1)^|S| / (2^{prod S} - 1).
///
/// Subsets are visited in Gray-code order so each exponent is one multiply or
/// divide away from the previous. Throws ResourceLimitError for n above
/// kGandhiFeasibleMax unless `allow_large` is set.
ExactRational pi_n_exact(std::size_t n, const PrimeTable& table, bool allow_large = false);

/// The unique m with 1 < 2^m (pi_n - 1/2) < 2, by exact doubling. Throws
/// InvariantViolation if the bracket is not positive or the upper bound fails.
std::uint64_t extract_prime(const ExactRational& pi_n);

struct FloatExtraction {
  std::optional<std::uint64_t> m;  ///< empty on precision failure
  double bracket = 0.0;            ///< pi_n - 1/2 in 64-bit floats
  bool precision_failure() const noexcept { return !m.has_value(); }
};

/// floor(1 - log2(pi_n - 1/2)) in 64-bit floats.
FloatExtraction log2_extraction_float(const ExactRational& pi_n);

struct GandhiEvaluation {
  std::size_t n = 0;
  ExactRational pi_n;
  ExactRational bracket;  ///< pi_n - 1/2
  std::uint64_t extracted_m = 0;
  ExactRational theta;    ///< 2^m * bracket - 1
  std::uint64_t subset_count = 0;
  FloatExtraction float_extraction;
};

GandhiEvaluation evaluate_gandhi(std::size_t n, const PrimeTable& table, bool allow_large = false);

/// 1/2 + 2^{-p} < pi_n < 1/2 + 2^{-p} + 2^{-(p+1)} with p = p_{n+1}, exact.
bool gandhi_sandwich_holds(const ExactRational& pi_n, std::uint64_t p_next);

/// Draws `samples` geometric(1/2) variates and returns the fraction coprime
/// to P_n.
///
/// Generator: std::mt19937_64 seeded with `seed`. Each draw takes one 64-bit
/// output x, forms u = ((x >> 11) + 1) * 2^-53 in (0, 1], and returns
/// k = max(1, ceil(-log2 u)), so P(k) = 2^-k. Throws std::domain_error for
/// samples < 10^4.
double monte_carlo_pi(std::size_t n, std::uint64_t samples, std::uint64_t seed, const PrimeTable& table);

}  // namespace primeform
