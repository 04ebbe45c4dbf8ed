#include "primeform/spectral.hpp"

#include <vector>

namespace primeform {

double oscillation_bound(std::uint64_t n, const PrimeTable& table) {
  const std::uint64_t cutoff = spectral_cutoff(n);
  CompensatedSum<double> psi;
  for (std::uint64_t k = 2; k <= cutoff; ++k) psi += table.von_mangoldt(k);
  return psi.value();
}

void SpectralParams::validate() const {
  if (calib_lo < 3) throw std::domain_error("SpectralParams: calib_lo must be >= 3");
  if (calib_hi <= calib_lo) throw std::domain_error("SpectralParams: calib_hi must exceed calib_lo");
  if (!std::isfinite(alpha)) throw std::domain_error("SpectralParams: alpha must be finite");
}

double least_squares_amplitude(std::span<const double> residuals, std::span<const double> regressors) {
  if (residuals.size() != regressors.size()) {
    throw std::invalid_argument("least_squares_amplitude: size mismatch");
  }
  if (residuals.empty()) throw std::domain_error("least_squares_amplitude: empty window");
  CompensatedSum<double> cross;
  CompensatedSum<double> energy;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    cross += residuals[i] * regressors[i];
    energy += regressors[i] * regressors[i];
  }
  if (energy.value() == 0.0) return 0.0;
  return cross.value() / energy.value();
}

double calibrate_alpha(const SpectralParams& params, const PrimeTable& table) {
  params.validate();
  if (params.calib_hi > table.count()) {
    throw std::out_of_range("calibrate_alpha: window end " + std::to_string(params.calib_hi) +
                            " exceeds the " + std::to_string(table.count()) + " primes in the table");
  }
  std::vector<double> residuals;
  std::vector<double> regressors;
  for (std::uint64_t n = params.calib_lo; n <= params.calib_hi; ++n) {
    residuals.push_back(static_cast<double>(table.prime(n)) - cipolla_drift<double>(n));
    regressors.push_back(oscillation_sum<double>(n, table));
  }
  return least_squares_amplitude(residuals, regressors);
}

EstimatorRecord spectral_estimate(std::uint64_t n, const SpectralParams& params, const PrimeTable& table) {
  if (n < 3) throw std::domain_error("spectral_estimate: n must be >= 3");
  if (!std::isfinite(params.alpha)) throw std::domain_error("spectral_estimate: alpha must be finite");
  double estimate = cipolla_drift<double>(n);
  if (params.alpha != 0.0) estimate += params.alpha * oscillation_sum<double>(n, table);
  return make_record(n, table.prime(n), estimate);
}

}  // namespace primeform
