#include <gtest/gtest.h>

#include <cmath>

#include "primeform/core/errors.hpp"
#include "primeform/gandhi.hpp"

using namespace primeform;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(10'000);
  return t;
}

ExactRational frac(long p, long q) { return ExactRational(mpz_class(p), mpz_class(q)); }

// P(B_n) restricted to m <= limit: sum of 2^-m over m coprime to p_1..p_n.
ExactRational survivor_measure(std::size_t n, std::uint64_t limit) {
  ExactRational total;
  for (std::uint64_t m = 1; m <= limit; ++m) {
    bool coprime = true;
    for (std::size_t i = 1; i <= n; ++i) coprime = coprime && m % table().prime(i) != 0;
    if (coprime) total += ExactRational::reciprocal(BigNatural::power_of_two(m));
  }
  return total;
}

}  // namespace

TEST(GeometricDivisibility, Examples) {
  EXPECT_EQ(geometric_divisibility(1), ExactRational(1));
  EXPECT_EQ(geometric_divisibility(2), frac(1, 3));
  EXPECT_EQ(geometric_divisibility(30), frac(1, (1L << 30) - 1));
  EXPECT_THROW(geometric_divisibility(0), std::domain_error);
}

TEST(PiN, SmallCases) {
  EXPECT_EQ(pi_n_exact(1, table()), frac(2, 3));
  EXPECT_EQ(pi_n_exact(2, table()), ExactRational(1) - frac(1, 3) - frac(1, 7) + frac(1, 63));
}

TEST(PiN, FeasibilityBound) {
  EXPECT_THROW(pi_n_exact(8, table()), ResourceLimitError);
  EXPECT_THROW(pi_n_exact(16, table(), true), ResourceLimitError);
  EXPECT_THROW(pi_n_exact(0, table()), std::domain_error);
  try {
    pi_n_exact(9, table());
    FAIL();
  } catch (const ResourceLimitError& e) {
    EXPECT_NE(std::string(e.what()).find("2^9"), std::string::npos);
  }
}

TEST(PiN, MatchesSurvivorEnumeration) {
  const ExactRational tail_bound = ExactRational::reciprocal(BigNatural::power_of_two(200));
  for (std::size_t n = 1; n <= 5; ++n) {
    const ExactRational exact = pi_n_exact(n, table());
    const ExactRational partial = survivor_measure(n, 200);
    const ExactRational gap = exact - partial;
    EXPECT_GE(gap.sign(), 0) << n;
    EXPECT_LE(gap, tail_bound) << n;
  }
}

TEST(ExtractPrime, Examples) {
  EXPECT_EQ(extract_prime(frac(2, 3)), 3u);
  EXPECT_EQ(extract_prime(pi_n_exact(2, table())), 5u);
  EXPECT_EQ(extract_prime(pi_n_exact(6, table())), 17u);
  EXPECT_THROW(extract_prime(frac(1, 2)), InvariantViolation);
}

TEST(ExtractPrime, RejectsBracketWithoutUpperBound) {
  // bracket 0.249: 2^2 b = 0.996, 2^3 b = 1.992.
  EXPECT_EQ(extract_prime(frac(1, 2) + frac(1, 4) - frac(1, 1000)), 3u);
  // Exactly 1/4 gives 2^2 * b = 1, then 2^3 * b = 2: no m satisfies both strict bounds.
  EXPECT_THROW(extract_prime(frac(3, 4)), InvariantViolation);
}

TEST(Gandhi, ExactnessUpToSeven) {
  const ExactRational half = frac(1, 2);
  for (std::size_t n = 1; n <= kGandhiFeasibleMax; ++n) {
    const GandhiEvaluation eval = evaluate_gandhi(n, table());
    const std::uint64_t p_next = table().prime(n + 1);
    EXPECT_EQ(eval.extracted_m, p_next) << n;
    EXPECT_GT(eval.theta.sign(), 0) << n;
    EXPECT_LT(eval.theta, half) << n;
    EXPECT_TRUE(gandhi_sandwich_holds(eval.pi_n, p_next)) << n;
    EXPECT_EQ(eval.subset_count, std::uint64_t{1} << n);
    const ExactRational scaled = eval.bracket.times_pow2(eval.extracted_m);
    EXPECT_GT(scaled, ExactRational(1));
    EXPECT_LT(scaled, ExactRational(2));
  }
}

TEST(Gandhi, SandwichFailsForWrongPrime) {
  EXPECT_FALSE(gandhi_sandwich_holds(pi_n_exact(3, table()), 5));
  EXPECT_FALSE(gandhi_sandwich_holds(pi_n_exact(3, table()), 11));
}

TEST(Log2Extraction, AgreesWithExactForSmallN) {
  EXPECT_EQ(log2_extraction_float(frac(2, 3)).m, 3u);
  EXPECT_EQ(log2_extraction_float(pi_n_exact(2, table())).m, 5u);
  for (std::size_t n = 1; n <= kGandhiFeasibleMax; ++n) {
    EXPECT_EQ(log2_extraction_float(pi_n_exact(n, table())).m, table().prime(n + 1)) << n;
  }
}

TEST(Log2Extraction, ReportsCancellation) {
  // 1/2 + 2^-60 + 2^-62 rounds to 1/2 in a double: the bracket vanishes.
  const ExactRational pi = frac(1, 2) + ExactRational::reciprocal(BigNatural::power_of_two(60)) +
                           ExactRational::reciprocal(BigNatural::power_of_two(62));
  const FloatExtraction f = log2_extraction_float(pi);
  EXPECT_TRUE(f.precision_failure());
  EXPECT_EQ(extract_prime(pi), 60u);
}

TEST(MonteCarlo, WithinFourSigma) {
  const std::uint64_t samples = 1'000'000;
  for (std::size_t n = 1; n <= 5; ++n) {
    const double exact = pi_n_exact(n, table()).to_double();
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(samples));
    const double estimate = monte_carlo_pi(n, samples, 42, table());
    EXPECT_LE(std::abs(estimate - exact), 4.0 * sigma) << n;
  }
}

TEST(MonteCarlo, DeterministicForSeed) {
  EXPECT_EQ(monte_carlo_pi(4, 100'000, 9, table()), monte_carlo_pi(4, 100'000, 9, table()));
  EXPECT_NE(monte_carlo_pi(4, 100'000, 9, table()), monte_carlo_pi(4, 100'000, 10, table()));
  EXPECT_THROW(monte_carlo_pi(1, 9999, 1, table()), std::domain_error);
}
