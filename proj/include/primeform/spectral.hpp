#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

#include "primeform/core/numeric.hpp"
#include "primeform/core/prime_table.hpp"
#include "primeform/estimator_record.hpp"

namespace primeform {

/// Five-term Cipolla expansion
///   T(n) = n [ln n + ln ln n - 1 + (ln ln n - 2)/ln n
///             - ((ln ln n)^2 - 6 ln ln n + 11) / (2 (ln n)^2)].
/// Defined for n >= 2; see cipolla_unreliable() for n = 2.
template <std::floating_point Scalar = double>
Scalar cipolla_drift(std::uint64_t n) {
  if (n <= 1) throw std::domain_error("cipolla_drift: n must be >= 2");
  const Scalar nn = static_cast<Scalar>(n);
  const Scalar l = std::log(nn);
  const Scalar ll = std::log(l);
  return nn * (l + ll - 1 + (ll - 2) / l - (ll * ll - 6 * ll + 11) / (2 * l * l));
}

/// ln ln 2 < 0, so the expansion at n = 2 is evaluated but not trusted.
inline bool cipolla_unreliable(std::uint64_t n) { return n == 2; }

/// floor(sqrt(T(n))), the harmonic cutoff.
inline std::uint64_t spectral_cutoff(std::uint64_t n) {
  const double t = cipolla_drift<double>(n);
  if (t < 1.0) return 0;
  auto k = static_cast<std::uint64_t>(std::sqrt(t));
  while (static_cast<double>(k + 1) * static_cast<double>(k + 1) <= t) ++k;
  while (k > 0 && static_cast<double>(k) * static_cast<double>(k) > t) --k;
  return k;
}

/// sum_{k=2}^{floor(sqrt T(n))} Lambda(k) cos(2 pi n / ln k), ascending in k
/// with compensated accumulation.
template <std::floating_point Scalar = double>
Scalar oscillation_sum(std::uint64_t n, const PrimeTable& table) {
  if (n < 3) throw std::domain_error("oscillation_sum: n must be >= 3");
  const std::uint64_t cutoff = spectral_cutoff(n);
  if (cutoff > table.limit()) {
    throw std::out_of_range("oscillation_sum: cutoff " + std::to_string(cutoff) + " exceeds sieve limit " +
                            std::to_string(table.limit()));
  }
  CompensatedSum<Scalar> sum;
  const Scalar phase = 2 * std::numbers::pi_v<Scalar> * static_cast<Scalar>(n);
  for (std::uint64_t k = 2; k <= cutoff; ++k) {
    const double weight = table.von_mangoldt(k);
    if (weight == 0.0) continue;
    sum += static_cast<Scalar>(weight) * std::cos(phase / std::log(static_cast<Scalar>(k)));
  }
  return sum.value();
}

/// psi(floor(sqrt T(n))), the |cos| <= 1 bound on oscillation_sum.
double oscillation_bound(std::uint64_t n, const PrimeTable& table);

struct SpectralParams {
  double alpha = 0.0;
  std::uint64_t calib_lo = 10;
  std::uint64_t calib_hi = 1000;

  /// Throws std::domain_error unless calib_lo >= 3, calib_hi > calib_lo and alpha is finite.
  void validate() const;
};

/// Closed-form least-squares amplitude sum(r o) / sum(o^2); 0 when every
/// regressor vanishes. Reduces in index order.
double least_squares_amplitude(std::span<const double> residuals, std::span<const double> regressors);

/// Fits alpha over n in [calib_lo, calib_hi] with r_n = p_n - T(n) and
/// o_n = oscillation_sum(n). The incoming alpha is ignored.
double calibrate_alpha(const SpectralParams& params, const PrimeTable& table);

/// T(n) + alpha * oscillation_sum(n); the residual term is taken as zero.
EstimatorRecord spectral_estimate(std::uint64_t n, const SpectralParams& params, const PrimeTable& table);

}  // namespace primeform
