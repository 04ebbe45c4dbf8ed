#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "primeform/core/errors.hpp"
#include "primeform/survival.hpp"

namespace primeform {

namespace {

// Trial division; the divisors here stay below z, which is small.
int small_moebius(std::uint64_t d) {
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p != 0) continue;
    d /= p;
    if (d % p == 0) return 0;
    sign = -sign;
  }
  if (d > 1) sign = -sign;
  return sign;
}

}  // namespace

std::vector<std::uint64_t> squarefree_below(std::uint64_t z) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d < z; ++d) {
    if (small_moebius(d) != 0) out.push_back(d);
  }
  return out;
}

Eigen::MatrixXd selberg_gram(std::uint64_t x, std::span<const std::uint64_t> divisors) {
  const auto size = static_cast<Eigen::Index>(divisors.size());
  Eigen::MatrixXd gram(size, size);
  for (Eigen::Index i = 0; i < size; ++i) {
    for (Eigen::Index j = i; j < size; ++j) {
      const std::uint64_t l = std::lcm(divisors[i], divisors[j]);
      gram(i, j) = gram(j, i) = static_cast<double>(x / l);
    }
  }
  return gram;
}

double selberg_direct_value(std::uint64_t x, std::span<const std::uint64_t> divisors, const Eigen::VectorXd& lambda) {
  if (static_cast<std::size_t>(lambda.size()) != divisors.size()) {
    throw std::invalid_argument("selberg_direct_value: weight/divisor size mismatch");
  }
  double total = 0.0;
  for (std::uint64_t n = 1; n <= x; ++n) {
    double inner = 0.0;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (n % divisors[i] == 0) inner += lambda[static_cast<Eigen::Index>(i)];
    }
    total += inner * inner;
  }
  return total;
}

Eigen::VectorXd moebius_weights(std::span<const std::uint64_t> divisors) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(divisors.size()));
  for (std::size_t i = 0; i < divisors.size(); ++i) out[static_cast<Eigen::Index>(i)] = small_moebius(divisors[i]);
  return out;
}

double selberg_kkt_residual(const SelbergSolution& solution) {
  const Eigen::VectorXd gradient = solution.gram * solution.lambda;
  if (gradient.size() <= 1) return 0.0;
  return gradient.tail(gradient.size() - 1).cwiseAbs().maxCoeff();
}

SelbergSolution selberg_minimize(std::uint64_t x, std::uint64_t z) {
  if (z < 2 || z > x) throw std::domain_error("selberg_minimize: need 2 <= z <= x");
  SelbergSolution out;
  out.x = x;
  out.z = z;
  out.divisors = squarefree_below(z);
  if (out.divisors.size() > kSelbergMaxDivisors) {
    throw ResourceLimitError("selberg_minimize: " + std::to_string(out.divisors.size()) +
                             " squarefree divisors below z = " + std::to_string(z) + " exceed the limit of " +
                             std::to_string(kSelbergMaxDivisors));
  }
  out.gram = selberg_gram(x, out.divisors);
  const Eigen::Index size = out.gram.rows();
  out.lambda = Eigen::VectorXd::Zero(size);
  out.lambda[0] = 1.0;

  if (size > 1) {
    // With lambda_1 fixed the objective is G11 + 2 b^T mu + mu^T H mu, minimised at H mu = -b.
    const Eigen::Index rest = size - 1;
    const Eigen::MatrixXd reduced = out.gram.bottomRightCorner(rest, rest);
    const Eigen::VectorXd rhs = -out.gram.col(0).tail(rest);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(reduced);
    out.rcond = ldlt.rcond();
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || !(out.rcond > 1e-14)) {
      std::ostringstream msg;
      msg << "selberg_minimize: reduced system singular for x = " << x << ", z = " << z << " (size " << rest
          << ", rcond " << out.rcond << ", |diag D| min " << ldlt.vectorD().cwiseAbs().minCoeff() << ")";
      throw InvariantViolation(msg.str());
    }
    Eigen::VectorXd mu = ldlt.solve(rhs);
    mu += ldlt.solve(rhs - reduced * mu);
    out.lambda.tail(rest) = mu;
  } else {
    out.rcond = 1.0;
  }

  out.s_value = out.lambda.dot(out.gram * out.lambda);
  const double direct = selberg_direct_value(x, out.divisors, out.lambda);
  if (std::abs(direct - out.s_value) > 1e-9 * std::max(1.0, std::abs(direct))) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "selberg_minimize: quadratic form " << out.s_value << " disagrees with direct evaluation " << direct;
    throw InvariantViolation(msg.str());
  }
  return out;
}

}  // namespace primeform
