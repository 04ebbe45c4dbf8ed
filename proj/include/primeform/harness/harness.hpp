#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "primeform/core/prime_table.hpp"
#include "primeform/harness/report.hpp"
#include "primeform/spectral.hpp"
#include "primeform/survival.hpp"

namespace primeform::harness {

enum class Command { kSieveNext, kCertify, kGandhi, kSpectral, kSurvival, kSelberg, kBrun, kReport, kBenchmark };
enum class Format { kCsv, kJson };
enum class SurvivalModel { kSurvival, kCapacity, kCapacityFixedPoint, kMertens, kEntropy };

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kInvariantViolation = 1;
inline constexpr int kUsage = 2;
inline constexpr int kResourceLimit = 3;
}  // namespace exit_code

inline constexpr std::uint64_t kDefaultSieveLimit = 2'000'000;

struct RunConfig {
  Command command = Command::kCertify;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> n_min;
  std::optional<std::uint64_t> n_max;
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  std::uint64_t x_bound = 0;  ///< brun's X
  std::uint64_t sieve_limit = kDefaultSieveLimit;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  std::optional<double> alpha_override;
  std::uint64_t calib_lo = 10;
  std::uint64_t calib_hi = 1000;
  SurvivalModel model = SurvivalModel::kSurvival;
  Format format = Format::kCsv;
  std::string out;  ///< empty: standard output
  bool allow_large_gandhi = false;
  unsigned jobs = 1;
};

struct RunResult {
  int status = exit_code::kSuccess;
  Report report;
  /// Exact-module invariants that failed, one message each.
  std::vector<std::string> violations;
};

/// Builds the report for `config`. Throws on usage errors (std::invalid_argument,
/// std::domain_error), resource limits (ResourceLimitError, std::out_of_range)
/// and internal invariant failures (InvariantViolation).
RunResult execute(const RunConfig& config);

/// execute() plus serialization and exception-to-exit-code mapping.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Per-n exact and float delta, float floor, survival residual sign and
/// spectral residual for n = 1..n_max, followed by one `summary` row.
Report precision_study(std::uint64_t n_max, const PrimeTable& table, const SpectralParams& spectral,
                       const SurvivalParams& survival, std::vector<std::string>* violations = nullptr);

/// Wall time of next_prime_via_chi for n = 1..n_max and of pi_n_exact for
/// n = 1..kGandhiFeasibleMax, interleaved by n.
Report benchmark(std::uint64_t n_max, const PrimeTable& table);

/// CLI entry point shared by the tool and the tests. `args` excludes argv[0].
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace primeform::harness
