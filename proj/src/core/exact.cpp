#include "primeform/core/exact.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace primeform {

namespace {

mpz_class to_mpz(std::uint64_t v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return out;
}

struct Fraction {
  mpz_class num;
  mpz_class den;
};

Fraction split_sum(std::span<const std::uint64_t> ms) {
  if (ms.size() == 1) return {mpz_class(1), to_mpz(ms[0])};
  const auto mid = ms.size() / 2;
  Fraction left = split_sum(ms.first(mid));
  Fraction right = split_sum(ms.subspan(mid));
  Fraction out;
  out.num = left.num * right.den + right.num * left.den;
  out.den = left.den * right.den;
  return out;
}

}  // namespace

BigNatural::BigNatural(std::uint64_t value) : value_(to_mpz(value)) {}

BigNatural BigNatural::from_mpz(mpz_class value) {
  if (sgn(value) < 0) throw std::domain_error("BigNatural: negative value");
  BigNatural out;
  out.value_ = std::move(value);
  return out;
}

BigNatural BigNatural::power_of_two(std::uint64_t exponent) {
  BigNatural out;
  mpz_setbit(out.value_.get_mpz_t(), exponent);
  return out;
}

std::size_t BigNatural::bit_length() const noexcept {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

std::uint64_t BigNatural::gcd_with(std::uint64_t m) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 target expected");
  return mpz_gcd_ui(nullptr, value_.get_mpz_t(), static_cast<unsigned long>(m));
}

BigNatural& BigNatural::operator*=(const BigNatural& rhs) {
  value_ *= rhs.value_;
  return *this;
}

BigNatural& BigNatural::operator*=(std::uint64_t rhs) {
  value_ *= to_mpz(rhs);
  return *this;
}

BigNatural gcd(const BigNatural& a, const BigNatural& b) {
  BigNatural out;
  mpz_gcd(out.value_.get_mpz_t(), a.value_.get_mpz_t(), b.value_.get_mpz_t());
  return out;
}

ExactRational::ExactRational(const mpz_class& numerator, const mpz_class& denominator)
    : value_(numerator, denominator) {
  if (sgn(denominator) == 0) throw std::domain_error("ExactRational: zero denominator");
  value_.canonicalize();
}

ExactRational::ExactRational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

ExactRational ExactRational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("ExactRational: non-finite double");
  // mpq_set_d is exact for finite doubles.
  return ExactRational(mpq_class(value));
}

ExactRational ExactRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return ExactRational(mpz_class(std::string(text)), mpz_class(1));
    }
    mpz_class num(std::string(text.substr(0, slash)));
    mpz_class den(std::string(text.substr(slash + 1)));
    if (sgn(den) <= 0) throw std::invalid_argument("non-positive denominator");
    return ExactRational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("ExactRational: cannot parse '" + std::string(text) + "'");
  }
}

ExactRational ExactRational::reciprocal(const BigNatural& denominator) {
  return ExactRational(mpz_class(1), denominator.mpz());
}

mpz_class ExactRational::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
  return out;
}

ExactRational ExactRational::times_pow2(std::uint64_t k) const {
  mpq_class out;
  mpq_mul_2exp(out.get_mpq_t(), value_.get_mpq_t(), k);
  return ExactRational(out);
}

std::string ExactRational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

ExactRational& ExactRational::operator+=(const ExactRational& rhs) {
  value_ += rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator-=(const ExactRational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator*=(const ExactRational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

ExactRational& ExactRational::operator/=(const ExactRational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("ExactRational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

ExactRational sum_of_reciprocals(std::span<const std::uint64_t> ms) {
  if (ms.empty()) return ExactRational();
  for (auto m : ms) {
    if (m == 0) throw std::domain_error("sum_of_reciprocals: zero term");
  }
  Fraction f = split_sum(ms);
  return ExactRational(f.num, f.den);
}

}  // namespace primeform
