#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "primeform/gandhi.hpp"
#include "primeform/harness/harness.hpp"
#include "primeform/sieve_identity.hpp"
#include "primeform/spectral.hpp"
#include "primeform/survival.hpp"

using namespace primeform;

namespace {

const PrimeTable& table() {
  static const PrimeTable t(2'000'000);
  return t;
}

ExactRational reciprocal(std::uint64_t m) { return ExactRational(mpz_class(1), mpz_class(static_cast<unsigned long>(m))); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %s %s%s%s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.empty() ? "" : ": ",
              o.detail.c_str());
}

Outcome ac1() {
  Outcome o;
  for (std::size_t n = 1; n <= 500; ++n) {
    o.require(next_prime_via_chi(n, table()) == table().prime(n + 1), "next prime mismatch at n=" + std::to_string(n));
    o.require(harmonic_certificate(n, table()).floor_exact == 1, "floor(S_n) != 1 at n=" + std::to_string(n));
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  for (const auto& r : delta_precision_probe(500, table())) {
    o.require(reciprocal(r.p_next) <= r.delta, "lower bound fails at n=" + std::to_string(r.n));
    o.require(check_delta_bounds(r, 1e-12).upper_holds, "upper bound fails at n=" + std::to_string(r.n));
  }
  const double countervalue = 1.0 / 3.0 + std::log(2.0);
  o.require(countervalue > 1.0 && std::abs(intermediate_bound(1, table()) - countervalue) < 1e-15,
            "n=1 intermediate bound should exceed 1");
  o.detail = o.pass ? "n=1 countervalue 1/3 + ln 2 = " + harness::format_double(countervalue) : o.detail;
  return o;
}

Outcome ac3() {
  Outcome o;
  const ExactRational half(mpz_class(1), mpz_class(2));
  for (std::size_t n = 1; n <= 7; ++n) {
    const GandhiEvaluation e = evaluate_gandhi(n, table());
    const std::uint64_t p = table().prime(n + 1);
    const std::string at = " at n=" + std::to_string(n);
    o.require(e.extracted_m == p, "extraction" + at);
    o.require(e.theta.sign() > 0 && e.theta < half, "theta" + at);
    o.require(gandhi_sandwich_holds(e.pi_n, p), "sandwich" + at);
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  const std::uint64_t samples = 1'000'000;
  double worst = 0.0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const double exact = pi_n_exact(n, table()).to_double();
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(samples));
    const double z = std::abs(monte_carlo_pi(n, samples, 42, table()) - exact) / sigma;
    worst = std::max(worst, z);
    o.require(z <= 4.0, "beyond 4 sigma at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "max |z| = " + harness::format_double(worst);
  return o;
}

Outcome ac5() {
  Outcome o;
  const SurvivalParams params;
  o.require(params.density_efficiency() > 0.5614 && params.density_efficiency() < 0.5615, "e^-gamma");
  const auto sweep = mertens_sweep(100000, table(), params);
  double lo = 2.0;
  double hi = 0.0;
  for (std::size_t n = 1000; n <= 100000; ++n) {
    const double r = sweep[n - 1].normalized_ratio;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    o.require(r > 0.9 && r < 1.1, "ratio outside (0.9, 1.1) at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "ratio range [" + harness::format_double(lo) + ", " + harness::format_double(hi) + "]";
  return o;
}

Outcome ac6() {
  Outcome o;
  double worst_wide = 0.0;
  double worst_tail = 0.0;
  for (std::uint64_t n = 100; n <= 100000; ++n) {
    const double rel = std::abs(cipolla_drift(n) / static_cast<double>(table().prime(n)) - 1.0);
    worst_wide = std::max(worst_wide, rel);
    if (n >= 10000) worst_tail = std::max(worst_tail, rel);
  }
  o.require(worst_wide < 0.10, "max rel error on [100, 1e5] = " + harness::format_double(worst_wide));
  o.require(worst_tail < 0.01, "max rel error on [1e4, 1e5] = " + harness::format_double(worst_tail));
  if (o.pass) {
    o.detail = "max rel error " + harness::format_double(worst_wide) + " and " + harness::format_double(worst_tail);
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  const SelbergSolution hand = selberg_minimize(10, 3);
  o.require(hand.divisors.size() == 2 && std::abs(hand.lambda(1) + 1.0) < 1e-12 && std::abs(hand.s_value - 5.0) < 1e-12,
            "hand instance x=10 z=3");
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t x = std::uniform_int_distribution<std::uint64_t>(2, 500)(rng);
    const std::uint64_t z = std::uniform_int_distribution<std::uint64_t>(2, std::min<std::uint64_t>(20, x))(rng);
    const SelbergSolution s = selberg_minimize(x, z);
    const std::string at = " at x=" + std::to_string(x) + " z=" + std::to_string(z);
    const double moebius = selberg_direct_value(x, s.divisors, moebius_weights(s.divisors));
    o.require(s.s_value <= moebius + 1e-9 * moebius, "above Moebius value" + at);
    o.require(selberg_kkt_residual(s) < 1e-9, "KKT residual" + at);
    const double direct = selberg_direct_value(x, s.divisors, s.lambda);
    o.require(std::abs(direct - s.s_value) <= 1e-9 * std::max(1.0, s.s_value), "brute-force mismatch" + at);
  }
  return o;
}

Outcome ac8() {
  Outcome o;
  const auto steps = brun_steps(2'000'000, table());
  for (std::size_t i = 1; i < steps.size(); ++i) {
    o.require(steps[i].second >= steps[i - 1].second, "decrease at X=" + std::to_string(steps[i].first));
  }
  o.require(!steps.empty() && steps.back().second < 1.903, "partial sum reaches 1.903");
  if (o.pass) o.detail = "B(2e6) = " + harness::format_double(steps.back().second);
  return o;
}

void check_increasing(Outcome& o, const char* name, const std::function<double(std::size_t)>& f) {
  double previous = -1.0;
  for (std::size_t n = 10; n <= 10000; ++n) {
    const double v = f(n);
    if (!(std::isfinite(v) && v > 0.0 && v > previous)) {
      o.require(false, std::string(name) + " not finite, positive and increasing at n=" + std::to_string(n));
      return;
    }
    previous = v;
  }
}

bool round_trips(const harness::Report& report) {
  const harness::ParsedTable expected = harness::tabulate(report);
  std::stringstream csv;
  harness::write_csv(report, csv);
  const harness::ParsedTable from_csv = harness::read_csv(csv);
  std::stringstream json;
  harness::write_json(report, json);
  const harness::ParsedTable from_json = harness::read_json(json);
  return from_csv.columns == expected.columns && from_csv.rows == expected.rows &&
         from_json.columns == expected.columns && from_json.rows == expected.rows;
}

Outcome ac9() {
  Outcome o;
  SpectralParams spectral;
  const SpectralParams zero;
  spectral.alpha = calibrate_alpha(spectral, table());
  check_increasing(o, "spectral", [&](std::size_t n) { return spectral_estimate(n, spectral, table()).estimate; });
  const auto survival = survival_sweep(10, 10000, {}, table());
  check_increasing(o, "survival", [&](std::size_t n) { return survival[n - 10].estimate; });
  check_increasing(o, "capacity", [&](std::size_t n) { return capacity_estimate(n, table()).estimate; });

  double with = 0.0;
  double without = 0.0;
  for (std::uint64_t n = spectral.calib_lo; n <= spectral.calib_hi; ++n) {
    with += std::pow(spectral_estimate(n, spectral, table()).residual, 2);
    without += std::pow(spectral_estimate(n, zero, table()).residual, 2);
  }
  o.require(with <= without, "calibrated alpha increases the window squared residual");

  for (auto model : {harness::SurvivalModel::kSurvival, harness::SurvivalModel::kCapacity}) {
    harness::RunConfig config;
    config.command = harness::Command::kSurvival;
    config.model = model;
    config.n_min = 10;
    config.n_max = 10000;
    o.require(round_trips(harness::execute(config).report), "survival/capacity report round trip");
  }
  harness::RunConfig config;
  config.command = harness::Command::kSpectral;
  config.n_min = 10;
  config.n_max = 10000;
  o.require(round_trips(harness::execute(config).report), "spectral report round trip");
  if (o.pass) o.detail = "alpha = " + harness::format_double(spectral.alpha);
  return o;
}

Outcome ac10() {
  Outcome o;
  SpectralParams spectral;
  spectral.alpha = calibrate_alpha(spectral, table());
  std::vector<std::string> violations;
  const harness::Report report = harness::precision_study(500, table(), spectral, {}, &violations);
  o.require(violations.empty(), violations.empty() ? "" : violations.front());
  o.require(report.rows().size() == 501, "gap report rows");
  const auto& summary = report.rows().back();
  o.require(summary.source == "summary" && report.text(summary, "exact_floor_failures") == "0",
            "exact floor deviates from 1");
  o.require(round_trips(report), "precision report round trip");
  if (o.pass) {
    o.detail = "first float floor deviation: " + report.text(summary, "first_float_floor_deviation") +
               ", flagged: " + report.text(summary, "flagged_count");
  }
  return o;
}

}  // namespace

int main() {
  criterion("AC1", "next prime via chi and floor(S_n) = 1 for n <= 500", ac1);
  criterion("AC2", "1/p_{n+1} <= delta_n < 1/p_{n+1} + ln 2 for n <= 500", ac2);
  criterion("AC3", "Gandhi extraction, theta and sandwich exact for n <= 7", ac3);
  criterion("AC4", "Monte Carlo pi_n within 4 sigma for n <= 5", ac4);
  criterion("AC5", "Mertens normalized ratio in (0.9, 1.1) on [1e3, 1e5]", ac5);
  criterion("AC6", "Cipolla relative error < 0.10 on [100, 1e5], < 0.01 on [1e4, 1e5]", ac6);
  criterion("AC7", "Selberg minimizer on 50 random instances and the hand case", ac7);
  criterion("AC8", "Brun partial sums non-decreasing and < 1.903 up to 2e6", ac8);
  criterion("AC9", "estimator properties, calibration and report round trip", ac9);
  criterion("AC10", "precision study exact floor on n <= 500 with gap report", ac10);
  return failures == 0 ? 0 : 1;
}
