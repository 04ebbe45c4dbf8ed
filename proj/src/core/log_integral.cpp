#include <cmath>
#include <stdexcept>

#include "primeform/core/numeric.hpp"
#include "primeform/core/prime_table.hpp"

namespace primeform {

double log_integral(double x) {
  if (!(x >= 2.0)) throw std::domain_error("log_integral: x must be >= 2");
  if (x == 2.0) return 0.0;
  return integrate_adaptive_simpson([](double t) { return 1.0 / std::log(t); }, 2.0, x, 1e-10);
}

}  // namespace primeform
