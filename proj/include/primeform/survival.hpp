#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

#include "primeform/core/prime_table.hpp"
#include "primeform/estimator_record.hpp"

namespace primeform {

/// Euler-Mascheroni constant to 36 significant digits.
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

struct SurvivalParams {
  long double gamma = kEulerGamma;
  /// Absolute tolerance of the entropy quadrature.
  double entropy_tolerance = 1e-8;

  /// e^{-gamma}, the Mertens density efficiency.
  double density_efficiency() const { return static_cast<double>(std::exp(-gamma)); }
};

struct MertensValue {
  double product = 0.0;           ///< prod_{k<=n} (1 - 1/p_k)
  double normalized_ratio = 0.0;  ///< product * ln p_n / e^{-gamma}
};

MertensValue mertens_product(std::size_t n, const PrimeTable& table, const SurvivalParams& params = {});

/// Mertens values for n = 1..n_max from one sequential pass.
std::vector<MertensValue> mertens_sweep(std::size_t n_max, const PrimeTable& table,
                                        const SurvivalParams& params = {});

/// log2(ln x). Throws std::domain_error for x <= 1.
template <std::floating_point Scalar = double>
Scalar surprisal(Scalar x) {
  if (!(x > 1)) throw std::domain_error("surprisal: x must be > 1");
  return std::log2(std::log(x));
}

struct EntropyValue {
  double sum_form = 0.0;       ///< sum_{k=2}^n ln ln k / ln k
  double integral_form = 0.0;  ///< integral over [2, n] of ln ln x / ln x
  double relative_gap() const { return std::abs(sum_form - integral_form) / std::abs(integral_form); }
};

EntropyValue entropy(std::uint64_t n, const SurvivalParams& params = {});

/// floor((n ln n) * prod_{k=2}^n (1 + 1/(k ln k - ln ln k)) * e^{-gamma}).
EstimatorRecord survival_estimate(std::size_t n, const SurvivalParams& params, const PrimeTable& table);

/// survival_estimate for n in [n_lo, n_hi], carrying the product forward.
std::vector<EstimatorRecord> survival_sweep(std::size_t n_lo, std::size_t n_hi, const SurvivalParams& params,
                                            const PrimeTable& table);

/// Optimal Selberg weights for S(x, z) = sum_{n<=x} (sum_{d|n, d<z} lambda_d)^2
/// under lambda_1 = 1, over squarefree d < z.
struct SelbergSolution {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::vector<std::uint64_t> divisors;  ///< squarefree d < z, ascending; divisors[0] == 1
  Eigen::VectorXd lambda;
  Eigen::MatrixXd gram;  ///< G[d, e] = floor(x / lcm(d, e))
  double s_value = 0.0;  ///< lambda^T G lambda
  double rcond = 0.0;    ///< reciprocal condition estimate of the reduced system
};

/// Largest number of squarefree divisors accepted by selberg_minimize.
inline constexpr std::size_t kSelbergMaxDivisors = 64;

/// Eliminates lambda_1 and solves the reduced symmetric positive-definite
/// system. Throws std::domain_error unless 2 <= z <= x, ResourceLimitError for
/// more than kSelbergMaxDivisors divisors and InvariantViolation if the reduced
/// system is singular or the brute-force re-evaluation disagrees.
SelbergSolution selberg_minimize(std::uint64_t x, std::uint64_t z);

/// Squarefree integers in [1, z).
std::vector<std::uint64_t> squarefree_below(std::uint64_t z);
Eigen::MatrixXd selberg_gram(std::uint64_t x, std::span<const std::uint64_t> divisors);
/// sum_{n<=x} (sum_{d|n} lambda_d)^2 evaluated directly.
double selberg_direct_value(std::uint64_t x, std::span<const std::uint64_t> divisors, const Eigen::VectorXd& lambda);
/// lambda_d = mu(d) over the given divisors.
Eigen::VectorXd moebius_weights(std::span<const std::uint64_t> divisors);
/// max |(G lambda)_d| over d != 1.
double selberg_kkt_residual(const SelbergSolution& solution);

struct Capacity {
  double v = 0.0;         ///< V_phi(z) = sum_{d<z} mu^2(d) / phi(d)
  double capacity = 0.0;  ///< 1 / V(z)
};

/// Throws std::domain_error for z < 2, std::out_of_range for z beyond the table.
Capacity capacity(std::uint64_t z, const PrimeTable& table);

enum class CapacityMode {
  kOracle,      ///< z = floor(sqrt(p_n)) from the sieve oracle
  kFixedPoint,  ///< z from sqrt(n ln n), then two refinements z <- floor(sqrt(n V(z)))
};

/// n * V(z) with z clamped to >= 2; the Selberg remainder is taken as zero.
EstimatorRecord capacity_estimate(std::size_t n, const PrimeTable& table, CapacityMode mode = CapacityMode::kOracle);

/// sum of 1/p + 1/(p+2) over twin pairs with p + 2 <= X.
double brun_partial(std::uint64_t x_bound, const PrimeTable& table);

/// Running Brun sum after each twin pair (keyed by p + 2) up to X. The partial
/// sum is a step function of X, so these points cover every X.
std::vector<std::pair<std::uint64_t, double>> brun_steps(std::uint64_t x_bound, const PrimeTable& table);

}  // namespace primeform
