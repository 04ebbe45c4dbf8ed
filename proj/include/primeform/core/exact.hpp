#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace primeform {

/// Arbitrary-precision non-negative integer. Houses primorials and the
/// Mersenne-type denominators 2^e - 1 of the inclusion-exclusion sum.
class BigNatural {
 public:
  BigNatural() = default;
  explicit BigNatural(std::uint64_t value);

  /// Throws std::domain_error if `value` is negative.
  static BigNatural from_mpz(mpz_class value);
  static BigNatural power_of_two(std::uint64_t exponent);

  const mpz_class& mpz() const noexcept { return value_; }
  std::size_t bit_length() const noexcept;
  bool is_zero() const noexcept { return sgn(value_) == 0; }
  std::string to_string() const { return value_.get_str(); }

  /// gcd against a machine word without materialising a second bignum.
  std::uint64_t gcd_with(std::uint64_t m) const;

  BigNatural& operator*=(const BigNatural& rhs);
  BigNatural& operator*=(std::uint64_t rhs);

  friend BigNatural operator*(BigNatural lhs, const BigNatural& rhs) { return lhs *= rhs; }
  friend BigNatural operator*(BigNatural lhs, std::uint64_t rhs) { return lhs *= rhs; }
  friend BigNatural gcd(const BigNatural& a, const BigNatural& b);

  friend bool operator==(const BigNatural& a, const BigNatural& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const BigNatural& a, const BigNatural& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpz_class value_{0};
};

/// Exact rational in canonical form: gcd(|num|, den) = 1 and den >= 1 after
/// every operation. Comparisons against integers never round.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  ExactRational(const mpz_class& numerator, const mpz_class& denominator);
  explicit ExactRational(const mpq_class& value);

  /// Exact binary value of a finite double.
  static ExactRational from_double(double value);
  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input.
  static ExactRational parse(std::string_view text);
  static ExactRational reciprocal(const BigNatural& denominator);

  const mpz_class& numerator() const noexcept { return value_.get_num(); }
  const mpz_class& denominator() const noexcept { return value_.get_den(); }
  const mpq_class& mpq() const noexcept { return value_; }

  int sign() const noexcept { return sgn(value_); }
  mpz_class floor() const;
  /// Multiplies by 2^k exactly.
  ExactRational times_pow2(std::uint64_t k) const;
  double to_double() const { return value_.get_d(); }
  /// Always "numerator/denominator", including integers ("5/1").
  std::string to_string() const;

  ExactRational& operator+=(const ExactRational& rhs);
  ExactRational& operator-=(const ExactRational& rhs);
  ExactRational& operator*=(const ExactRational& rhs);
  ExactRational& operator/=(const ExactRational& rhs);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
  friend ExactRational operator-(const ExactRational& a) { return ExactRational(mpq_class(-a.value_)); }

  friend bool operator==(const ExactRational& a, const ExactRational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpq_class value_{0};
};

/// Sum of 1/m over `ms` by balanced binary splitting; one canonicalisation at
/// the end instead of one gcd per term.
ExactRational sum_of_reciprocals(std::span<const std::uint64_t> ms);

}  // namespace primeform
