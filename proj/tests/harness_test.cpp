#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "primeform/harness/harness.hpp"
#include "primeform/spectral.hpp"

using namespace primeform;
using namespace primeform::harness;

namespace {

struct Invocation {
  int status;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli_main(args, out, err);
  return {status, out.str(), err.str()};
}

ParsedTable parse(const std::string& csv) {
  std::istringstream in(csv);
  return read_csv(in);
}

std::size_t column(const ParsedTable& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  EXPECT_NE(it, t.columns.end()) << name;
  return static_cast<std::size_t>(it - t.columns.begin());
}

}  // namespace

TEST(Cli, CertifySweep) {
  const auto r = invoke({"certify", "--n-max", "100", "--sieve-limit", "100000"});
  ASSERT_EQ(r.status, 0) << r.err;
  const ParsedTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 100u);
  const std::size_t floor_col = column(t, "floor_exact");
  const std::size_t lower = column(t, "delta_lower_ok");
  const std::size_t upper = column(t, "delta_upper_ok");
  for (const auto& row : t.rows) {
    EXPECT_EQ(row[floor_col], "1");
    EXPECT_EQ(row[lower], "1");
    EXPECT_EQ(row[upper], "1");
  }
}

TEST(Cli, GandhiSingle) {
  const auto r = invoke({"gandhi", "--n", "3", "--samples", "0", "--sieve-limit", "1000"});
  ASSERT_EQ(r.status, 0) << r.err;
  const ParsedTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0][column(t, "extracted_m")], "7");
  EXPECT_EQ(t.rows[0][column(t, "sandwich_ok")], "1");
}

TEST(Cli, GandhiAboveFeasibilityIsResourceLimit) {
  const auto r = invoke({"gandhi", "--n", "8", "--sieve-limit", "1000"});
  EXPECT_EQ(r.status, exit_code::kResourceLimit);
  EXPECT_NE(r.err.find("2^8"), std::string::npos);
}

TEST(Cli, SpectralWithZeroAlphaFloorsDrift) {
  const auto r = invoke({"spectral", "--n-min", "3", "--n-max", "50", "--alpha", "0", "--sieve-limit", "10000"});
  ASSERT_EQ(r.status, 0) << r.err;
  const ParsedTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 48u);
  const std::size_t n_col = column(t, "n");
  const std::size_t floored = column(t, "floored");
  for (const auto& row : t.rows) {
    const auto n = std::stoull(row[n_col]);
    EXPECT_EQ(std::stoll(row[floored]), static_cast<long long>(std::floor(cipolla_drift(n))));
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"certify", "--bogus"}).status, exit_code::kUsage);
  EXPECT_EQ(invoke({}).status, exit_code::kUsage);
  EXPECT_EQ(invoke({"certify"}).status, exit_code::kUsage);
  EXPECT_EQ(invoke({"certify", "--n", "3", "--n-max", "5"}).status, exit_code::kUsage);
  EXPECT_EQ(invoke({"certify", "--n", "3", "--format", "xml"}).status, exit_code::kUsage);
  EXPECT_EQ(invoke({"--help"}).status, exit_code::kSuccess);
}

TEST(Cli, SieveLimitTooSmallIsResourceLimit) {
  EXPECT_EQ(invoke({"sieve-next", "--n", "100", "--sieve-limit", "100"}).status, exit_code::kResourceLimit);
  EXPECT_EQ(invoke({"brun", "--X", "5000", "--sieve-limit", "1000"}).status, exit_code::kResourceLimit);
}

TEST(Cli, PrecisionReport) {
  const auto r = invoke({"report", "--n-max", "10", "--sieve-limit", "100000"});
  ASSERT_EQ(r.status, 0) << r.err;
  const ParsedTable t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 11u);
  const std::size_t source = column(t, "source");
  const std::size_t floor_float = column(t, "floor_float64");
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(t.rows[i][source], "precision");
    EXPECT_EQ(t.rows[i][floor_float], "1");
  }
  EXPECT_EQ(t.rows[0][column(t, "delta_exact")], "1/3");
  EXPECT_EQ(t.rows[10][source], "summary");
  EXPECT_EQ(t.rows[10][column(t, "exact_floor_failures")], "0");
  EXPECT_EQ(t.rows[10][column(t, "first_float_floor_deviation")], "none");
}

TEST(Cli, SelbergAndBrun) {
  const auto s = invoke({"selberg", "--x", "10", "--z", "3"});
  ASSERT_EQ(s.status, 0) << s.err;
  const ParsedTable st = parse(s.out);
  ASSERT_EQ(st.rows.size(), 2u);
  EXPECT_EQ(st.rows[1][column(st, "lambda")], "-1");

  const auto b = invoke({"brun", "--X", "10", "--sieve-limit", "100"});
  ASSERT_EQ(b.status, 0) << b.err;
  const ParsedTable bt = parse(b.out);
  ASSERT_FALSE(bt.rows.empty());
  EXPECT_NEAR(std::stod(bt.rows.back()[column(bt, "partial_sum")]), 92.0 / 105.0, 1e-15);
}

TEST(Cli, SurvivalModels) {
  for (const char* model : {"survival", "capacity", "capacity-fixed-point", "mertens", "entropy"}) {
    const auto r = invoke({"survival", "--model", model, "--n-min", "3", "--n-max", "20", "--sieve-limit", "10000"});
    ASSERT_EQ(r.status, 0) << model << r.err;
    EXPECT_EQ(parse(r.out).rows.size(), 18u) << model;
  }
}

TEST(Cli, BenchmarkRows) {
  const auto r = invoke({"benchmark", "--n-max", "20", "--sieve-limit", "10000"});
  ASSERT_EQ(r.status, 0) << r.err;
  const ParsedTable t = parse(r.out);
  const std::size_t source = column(t, "source");
  const auto gandhi = std::count_if(t.rows.begin(), t.rows.end(),
                                    [&](const auto& row) { return row[source] == "benchmark_gandhi"; });
  EXPECT_EQ(gandhi, 7);
  EXPECT_EQ(t.rows.size(), 27u);
}

TEST(Cli, RepeatRunsAreByteIdentical) {
  const std::vector<std::string> args{"gandhi", "--n-max", "4", "--samples", "20000", "--seed", "5",
                                      "--sieve-limit", "1000"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
  const std::vector<std::string> jobs{"certify", "--n-max", "60", "--jobs", "4", "--sieve-limit", "10000"};
  const std::vector<std::string> serial{"certify", "--n-max", "60", "--sieve-limit", "10000"};
  EXPECT_EQ(invoke(jobs).out, invoke(serial).out);
}

TEST(Cli, JsonAndOutFile) {
  const auto r = invoke({"certify", "--n-max", "5", "--format", "json", "--sieve-limit", "1000"});
  ASSERT_EQ(r.status, 0) << r.err;
  std::istringstream in(r.out);
  const ParsedTable t = read_json(in);
  ASSERT_EQ(t.rows.size(), 5u);
  EXPECT_EQ(t.rows[1][column(t, "s_exact")], "6/5");

  const auto path = std::filesystem::temp_directory_path() / "primeform_harness_test.csv";
  std::filesystem::remove(path);
  const auto f = invoke({"certify", "--n-max", "5", "--sieve-limit", "1000", "--out", path.string()});
  ASSERT_EQ(f.status, 0) << f.err;
  std::ifstream file(path);
  const ParsedTable ft = read_csv(file);
  EXPECT_EQ(ft.rows.size(), 5u);
  std::filesystem::remove(path);
}

TEST(PrecisionStudy, ExactFloorsHoldToFiveHundred) {
  const PrimeTable table(100'000);
  SpectralParams spectral;
  std::vector<std::string> violations;
  const Report report = precision_study(500, table, spectral, {}, &violations);
  EXPECT_TRUE(violations.empty());
  ASSERT_EQ(report.rows().size(), 501u);
  EXPECT_EQ(report.text(report.rows().back(), "exact_floor_failures"), "0");
}
