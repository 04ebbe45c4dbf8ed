#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "primeform/core/exact.hpp"

namespace primeform {

/// Sieve-of-Eratosthenes oracle. Immutable after construction, so one table
/// can be shared freely between workers.
///
/// Besides the prime list the table keeps the smallest prime factor of every
/// integer up to `limit()`, which gives O(log m) factorisations for the
/// arithmetic functions below.
class PrimeTable {
 public:
  /// Throws std::domain_error if limit < 2.
  explicit PrimeTable(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::size_t count() const noexcept { return primes_.size(); }

  /// p_n, 1-based (p_1 = 2). Throws std::out_of_range past the table.
  std::uint64_t prime(std::size_t n) const;
  /// n such that p_n = p, or nullopt if p is not a stored prime.
  std::optional<std::size_t> ordinal(std::uint64_t p) const;
  /// pi(x) for x <= limit.
  std::size_t prime_pi(std::uint64_t x) const;
  /// Least prime strictly greater than x, if it lies inside the table.
  std::optional<std::uint64_t> next_prime(std::uint64_t x) const;
  bool is_prime(std::uint64_t m) const;
  std::uint64_t smallest_factor(std::uint64_t m) const;

  /// Distinct prime factors of m with multiplicities, ascending.
  std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t m) const;

  int moebius(std::uint64_t m) const;
  double von_mangoldt(std::uint64_t k) const;
  std::uint64_t totient(std::uint64_t d) const;

  /// Twin pairs (p, p + 2) with p + 2 <= limit, ascending.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> twin_pairs() const;

 private:
  void require_in_range(std::uint64_t m, const char* what) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> smallest_factor_;
  std::vector<std::uint64_t> primes_;
};

inline PrimeTable sieve(std::uint64_t limit) { return PrimeTable(limit); }

/// Counts primes <= limit with a segmented sieve that shares no code with
/// PrimeTable. Used to cross-check the oracle.
std::size_t segmented_prime_count(std::uint64_t limit, std::size_t segment_size = 1 << 15);

/// Product of the first n primes. Throws std::out_of_range if p_n is not in the table.
BigNatural primorial(const PrimeTable& table, std::size_t n);

/// Offset logarithmic integral Li(x) = integral of 1/ln t over [2, x], by
/// adaptive Simpson at absolute tolerance 1e-10. Throws std::domain_error for x < 2.
double log_integral(double x);

}  // namespace primeform
