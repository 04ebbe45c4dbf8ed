#include "primeform/core/prime_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace primeform {

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) throw std::domain_error("sieve: limit must be >= 2");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::domain_error("sieve: limit exceeds 2^32 - 1");
  }
  smallest_factor_.assign(limit + 1, 0);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (smallest_factor_[p] != 0) continue;
    smallest_factor_[p] = static_cast<std::uint32_t>(p);
    primes_.push_back(p);
    for (std::uint64_t q = p * p; q <= limit; q += p) {
      if (smallest_factor_[q] == 0) smallest_factor_[q] = static_cast<std::uint32_t>(p);
    }
  }
}

void PrimeTable::require_in_range(std::uint64_t m, const char* what) const {
  if (m > limit_) {
    throw std::out_of_range(std::string(what) + ": argument " + std::to_string(m) +
                            " exceeds sieve limit " + std::to_string(limit_));
  }
}

std::uint64_t PrimeTable::prime(std::size_t n) const {
  if (n == 0 || n > primes_.size()) {
    throw std::out_of_range("prime: ordinal " + std::to_string(n) + " outside table (" +
                            std::to_string(primes_.size()) + " primes up to " + std::to_string(limit_) +
                            ")");
  }
  return primes_[n - 1];
}

std::optional<std::size_t> PrimeTable::ordinal(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

std::size_t PrimeTable::prime_pi(std::uint64_t x) const {
  require_in_range(x, "prime_pi");
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::optional<std::uint64_t> PrimeTable::next_prime(std::uint64_t x) const {
  auto it = std::upper_bound(primes_.begin(), primes_.end(), x);
  if (it == primes_.end()) return std::nullopt;
  return *it;
}

bool PrimeTable::is_prime(std::uint64_t m) const {
  require_in_range(m, "is_prime");
  return m >= 2 && smallest_factor_[m] == m;
}

std::uint64_t PrimeTable::smallest_factor(std::uint64_t m) const {
  require_in_range(m, "smallest_factor");
  if (m < 2) throw std::domain_error("smallest_factor: m must be >= 2");
  return smallest_factor_[m];
}

std::vector<std::pair<std::uint64_t, unsigned>> PrimeTable::factorize(std::uint64_t m) const {
  require_in_range(m, "factorize");
  if (m == 0) throw std::domain_error("factorize: m must be >= 1");
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  while (m > 1) {
    const std::uint64_t p = smallest_factor_[m];
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return out;
}

int PrimeTable::moebius(std::uint64_t m) const {
  if (m == 0) throw std::domain_error("moebius: m must be >= 1");
  int sign = 1;
  for (auto [p, e] : factorize(m)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

double PrimeTable::von_mangoldt(std::uint64_t k) const {
  if (k == 0) throw std::domain_error("von_mangoldt: k must be >= 1");
  if (k == 1) return 0.0;
  require_in_range(k, "von_mangoldt");
  const std::uint64_t p = smallest_factor_[k];
  std::uint64_t rest = k;
  while (rest % p == 0) rest /= p;
  return rest == 1 ? std::log(static_cast<double>(p)) : 0.0;
}

std::uint64_t PrimeTable::totient(std::uint64_t d) const {
  if (d == 0) throw std::domain_error("totient: d must be >= 1");
  std::uint64_t phi = d;
  for (auto [p, e] : factorize(d)) phi = phi / p * (p - 1);
  return phi;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> PrimeTable::twin_pairs() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::size_t i = 1; i < primes_.size(); ++i) {
    if (primes_[i] - primes_[i - 1] == 2) out.emplace_back(primes_[i - 1], primes_[i]);
  }
  return out;
}

std::size_t segmented_prime_count(std::uint64_t limit, std::size_t segment_size) {
  if (limit < 2) return 0;
  if (segment_size == 0) throw std::domain_error("segmented_prime_count: empty segment");
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;

  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }

  std::size_t count = 0;
  std::vector<char> segment(segment_size);
  for (std::uint64_t lo = 2; lo <= limit; lo += segment_size) {
    const std::uint64_t hi = std::min<std::uint64_t>(lo + segment_size - 1, limit);
    std::fill(segment.begin(), segment.end(), 1);
    for (auto p : base) {
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= hi; j += p) segment[j - lo] = 0;
    }
    for (std::uint64_t v = lo; v <= hi; ++v) count += segment[v - lo];
  }
  return count;
}

BigNatural primorial(const PrimeTable& table, std::size_t n) {
  if (n == 0) throw std::domain_error("primorial: n must be >= 1");
  BigNatural product(1);
  for (std::size_t i = 1; i <= n; ++i) product *= table.prime(i);
  return product;
}

}  // namespace primeform
