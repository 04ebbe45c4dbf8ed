#pragma once

#include <cmath>
#include <cstdint>

namespace primeform {

/// One row of an estimator sweep against the sieve oracle.
struct EstimatorRecord {
  std::size_t n = 0;
  std::uint64_t p_n = 0;
  double estimate = 0.0;
  std::int64_t floored = 0;
  double residual = 0.0;   ///< p_n - estimate
  double rel_error = 0.0;  ///< residual / p_n
};

inline EstimatorRecord make_record(std::size_t n, std::uint64_t p_n, double estimate) {
  EstimatorRecord r;
  r.n = n;
  r.p_n = p_n;
  r.estimate = estimate;
  r.floored = static_cast<std::int64_t>(std::floor(estimate));
  r.residual = static_cast<double>(p_n) - estimate;
  r.rel_error = r.residual / static_cast<double>(p_n);
  return r;
}

}  // namespace primeform
