#pragma once

#include <cmath>
#include <concepts>
#include <stdexcept>

namespace primeform {

/// Kahan-Babuska (Neumaier) running sum.
template <std::floating_point Scalar>
class CompensatedSum {
 public:
  void add(Scalar term) noexcept {
    const Scalar t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(Scalar term) noexcept {
    add(term);
    return *this;
  }
  Scalar value() const noexcept { return sum_ + compensation_; }

 private:
  Scalar sum_{0};
  Scalar compensation_{0};
};

namespace detail {

template <std::floating_point Scalar, class F>
Scalar simpson_step(F& f, Scalar a, Scalar fa, Scalar b, Scalar fb, Scalar m, Scalar fm, Scalar whole,
                    Scalar tol, int depth) {
  const Scalar lm = (a + m) / 2;
  const Scalar rm = (m + b) / 2;
  const Scalar flm = f(lm);
  const Scalar frm = f(rm);
  const Scalar left = (m - a) / 6 * (fa + 4 * flm + fm);
  const Scalar right = (b - m) / 6 * (fm + 4 * frm + fb);
  const Scalar delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson_step(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// Returns 0 for an empty interval.
template <std::floating_point Scalar, class F>
Scalar integrate_adaptive_simpson(F&& f, Scalar a, Scalar b, Scalar tol, int max_depth = 48) {
  if (!(tol > 0)) throw std::domain_error("integrate_adaptive_simpson: tolerance must be positive");
  if (a == b) return Scalar(0);
  const Scalar m = (a + b) / 2;
  const Scalar fa = f(a);
  const Scalar fb = f(b);
  const Scalar fm = f(m);
  const Scalar whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

}  // namespace primeform
