#include "primeform/harness/harness.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "primeform/core/errors.hpp"
#include "primeform/gandhi.hpp"
#include "primeform/sieve_identity.hpp"

namespace primeform::harness {

namespace {

struct Range {
  std::uint64_t lo;
  std::uint64_t hi;
};

Range resolve_range(const RunConfig& config, std::uint64_t default_lo, const char* command) {
  if (config.n) {
    if (config.n_max || config.n_min) throw std::invalid_argument(std::string(command) + ": --n excludes --n-min/--n-max");
    return {*config.n, *config.n};
  }
  if (!config.n_max) throw std::invalid_argument(std::string(command) + ": one of --n or --n-max is required");
  const std::uint64_t lo = config.n_min.value_or(default_lo);
  if (lo > *config.n_max) throw std::invalid_argument(std::string(command) + ": --n-min exceeds --n-max");
  return {lo, *config.n_max};
}

// Evaluates fn(i) for i in [0, count) on up to `jobs` threads; results keep index order.
template <class T, class F>
std::vector<T> ordered_map(std::size_t count, unsigned jobs, F fn) {
  std::vector<T> results(count);
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += jobs) results[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

std::int64_t as_int(std::uint64_t v) { return static_cast<std::int64_t>(v); }

ReportRow estimator_row(std::string source, const EstimatorRecord& rec) {
  ReportRow row;
  row.source = std::move(source);
  row.n = rec.n;
  row.p_n = rec.p_n;
  row.set("estimate", rec.estimate).set("floored", rec.floored);
  row.residual = rec.residual;
  row.rel_error = rec.rel_error;
  return row;
}

SpectralParams spectral_params(const RunConfig& config, const PrimeTable& table) {
  SpectralParams params;
  params.calib_lo = config.calib_lo;
  params.calib_hi = config.calib_hi;
  params.validate();
  params.alpha = config.alpha_override ? *config.alpha_override : calibrate_alpha(params, table);
  params.validate();
  return params;
}

void run_sieve_next(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  const Range range = resolve_range(config, 1, "sieve-next");
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const std::uint64_t found = next_prime_via_chi(n, table);
    const std::uint64_t oracle = table.prime(n + 1);
    ReportRow row;
    row.source = "sieve_identity";
    row.n = n;
    row.p_n = table.prime(n);
    row.set("p_next", as_int(found)).set("oracle_p_next", as_int(oracle)).set("match", std::int64_t{found == oracle});
    if (found != oracle) {
      result.violations.push_back("sieve-next: n = " + std::to_string(n) + " found " + std::to_string(found) +
                                  ", oracle " + std::to_string(oracle));
    }
    result.report.add(std::move(row));
  }
}

void run_certify(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  const Range range = resolve_range(config, 1, "certify");
  auto reports = ordered_map<CertificateReport>(range.hi - range.lo + 1, config.jobs,
                                                [&](std::size_t i) { return harmonic_certificate(range.lo + i, table); });
  for (const auto& rep : reports) {
    const DeltaBounds bounds = check_delta_bounds(rep);
    const std::uint64_t oracle = table.prime(rep.n + 1);
    ReportRow row;
    row.source = "sieve_identity";
    row.n = rep.n;
    row.p_n = rep.p_n;
    row.set("p_next", as_int(rep.p_next))
        .set("s_exact", rep.s_exact.to_string())
        .set("floor_exact", rep.floor_exact.get_si())
        .set("delta", rep.delta.to_string())
        .set("s_float64", rep.s_float64)
        .set("floor_float64", std::int64_t{rep.floor_float64})
        .set("float_gap", rep.float_gap)
        .set("flagged", std::int64_t{rep.flagged})
        .set("delta_lower_ok", std::int64_t{bounds.lower_holds})
        .set("delta_upper_ok", std::int64_t{bounds.upper_holds});
    const std::string where = "certify: n = " + std::to_string(rep.n) + ": ";
    if (rep.floor_exact != 1) result.violations.push_back(where + "floor(S_n) = " + rep.floor_exact.get_str());
    if (rep.p_next != oracle) result.violations.push_back(where + "survivor " + std::to_string(rep.p_next) + " != oracle");
    if (!bounds.lower_holds) result.violations.push_back(where + "delta below 1/p_{n+1}");
    if (!bounds.upper_holds) result.violations.push_back(where + "delta above 1/p_{n+1} + ln 2");
    result.report.add(std::move(row));
  }
}

void run_gandhi(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  const Range range = resolve_range(config, 1, "gandhi");
  const ExactRational half(mpz_class(1), mpz_class(2));
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const GandhiEvaluation eval = evaluate_gandhi(n, table, config.allow_large_gandhi);
    const std::uint64_t oracle = table.prime(n + 1);
    const bool theta_ok = eval.theta.sign() > 0 && eval.theta < half;
    const bool sandwich_ok = gandhi_sandwich_holds(eval.pi_n, oracle);
    ReportRow row;
    row.source = "gandhi";
    row.n = n;
    row.p_n = table.prime(n);
    row.set("pi_n", eval.pi_n.to_string())
        .set("bracket", eval.bracket.to_string())
        .set("extracted_m", as_int(eval.extracted_m))
        .set("oracle_p_next", as_int(oracle))
        .set("theta", eval.theta.to_string())
        .set("subset_count", as_int(eval.subset_count))
        .set("theta_ok", std::int64_t{theta_ok})
        .set("sandwich_ok", std::int64_t{sandwich_ok});
    if (eval.float_extraction.m) {
      row.set("float_m", as_int(*eval.float_extraction.m));
    } else {
      row.set("float_m", std::string("precision_failure"));
    }
    if (config.samples > 0) {
      const double exact = eval.pi_n.to_double();
      const double estimate = monte_carlo_pi(n, config.samples, config.seed, table);
      const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(config.samples));
      row.set("mc_estimate", estimate).set("mc_sigma", sigma).set("mc_z", (estimate - exact) / sigma);
    }
    const std::string where = "gandhi: n = " + std::to_string(n) + ": ";
    if (eval.extracted_m != oracle) result.violations.push_back(where + "extracted m != p_{n+1}");
    if (!theta_ok) result.violations.push_back(where + "theta outside (0, 1/2)");
    if (!sandwich_ok) result.violations.push_back(where + "pi_n outside the sandwich bounds");
    result.report.add(std::move(row));
  }
}

void run_spectral(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  const Range range = resolve_range(config, 3, "spectral");
  const SpectralParams params = spectral_params(config, table);
  for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
    const EstimatorRecord rec = spectral_estimate(n, params, table);
    ReportRow row = estimator_row("spectral", rec);
    row.set("alpha", params.alpha)
        .set("drift", cipolla_drift<double>(n))
        .set("oscillation", oscillation_sum<double>(n, table));
    result.report.add(std::move(row));
  }
}

void run_survival(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  const SurvivalParams params;
  switch (config.model) {
    case SurvivalModel::kSurvival: {
      const Range range = resolve_range(config, 3, "survival");
      for (const auto& rec : survival_sweep(range.lo, range.hi, params, table)) {
        ReportRow row = estimator_row("survival", rec);
        row.set("residual_sign", std::int64_t{(rec.residual > 0) - (rec.residual < 0)});
        result.report.add(std::move(row));
      }
      break;
    }
    case SurvivalModel::kCapacity:
    case SurvivalModel::kCapacityFixedPoint: {
      const Range range = resolve_range(config, 2, "survival");
      const auto mode = config.model == SurvivalModel::kCapacity ? CapacityMode::kOracle : CapacityMode::kFixedPoint;
      for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
        const EstimatorRecord rec = capacity_estimate(n, table, mode);
        result.report.add(estimator_row(mode == CapacityMode::kOracle ? "capacity" : "capacity_fixed_point", rec));
      }
      break;
    }
    case SurvivalModel::kMertens: {
      const Range range = resolve_range(config, 1, "survival");
      const auto values = mertens_sweep(range.hi, table, params);
      for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
        ReportRow row;
        row.source = "mertens";
        row.n = n;
        row.p_n = table.prime(n);
        row.set("product", values[n - 1].product).set("normalized_ratio", values[n - 1].normalized_ratio);
        result.report.add(std::move(row));
      }
      break;
    }
    case SurvivalModel::kEntropy: {
      const Range range = resolve_range(config, 3, "survival");
      for (std::uint64_t n = range.lo; n <= range.hi; ++n) {
        const EntropyValue h = entropy(n, params);
        ReportRow row;
        row.source = "entropy";
        row.n = n;
        row.set("sum_form", h.sum_form).set("integral_form", h.integral_form).set("relative_gap", h.relative_gap());
        result.report.add(std::move(row));
      }
      break;
    }
  }
}

void run_selberg(const RunConfig& config, RunResult& result) {
  if (config.x == 0 || config.z == 0) throw std::invalid_argument("selberg: --x and --z are required");
  const SelbergSolution sol = selberg_minimize(config.x, config.z);
  const Eigen::VectorXd moebius = moebius_weights(sol.divisors);
  const double moebius_value = moebius.dot(sol.gram * moebius);
  const double kkt = selberg_kkt_residual(sol);
  for (std::size_t i = 0; i < sol.divisors.size(); ++i) {
    ReportRow row;
    row.source = "selberg";
    row.n = sol.divisors[i];
    row.set("x", as_int(sol.x))
        .set("z", as_int(sol.z))
        .set("lambda", sol.lambda[static_cast<Eigen::Index>(i)])
        .set("moebius_lambda", moebius[static_cast<Eigen::Index>(i)])
        .set("s_value", sol.s_value)
        .set("moebius_value", moebius_value)
        .set("kkt_residual", kkt)
        .set("rcond", sol.rcond);
    result.report.add(std::move(row));
  }
}

void run_brun(const RunConfig& config, const PrimeTable& table, RunResult& result) {
  if (config.x_bound == 0) throw std::invalid_argument("brun: --X is required");
  if (config.x_bound > table.limit()) {
    throw ResourceLimitError("brun: X = " + std::to_string(config.x_bound) + " needs --sieve-limit >= " +
                             std::to_string(config.x_bound));
  }
  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t c = 10; c < config.x_bound; c *= 10) checkpoints.push_back(c);
  checkpoints.push_back(config.x_bound);
  const auto steps = brun_steps(config.x_bound, table);
  std::size_t pairs = 0;
  double sum = 0.0;
  for (auto c : checkpoints) {
    while (pairs < steps.size() && steps[pairs].first <= c) sum = steps[pairs++].second;
    ReportRow row;
    row.source = "brun";
    row.n = pairs;
    row.set("X", as_int(c)).set("partial_sum", sum);
    result.report.add(std::move(row));
  }
}

}  // namespace

Report precision_study(std::uint64_t n_max, const PrimeTable& table, const SpectralParams& spectral,
                       const SurvivalParams& survival, std::vector<std::string>* violations) {
  if (n_max == 0) throw std::domain_error("precision_study: n_max must be >= 1");
  const auto certs = delta_precision_probe(n_max, table);
  std::vector<EstimatorRecord> survival_rows;
  if (n_max >= 3) survival_rows = survival_sweep(3, n_max, survival, table);

  Report report;
  std::optional<std::uint64_t> first_float_deviation;
  std::optional<std::uint64_t> first_flagged;
  std::int64_t float_deviations = 0;
  std::int64_t exact_failures = 0;
  std::int64_t flagged = 0;
  for (const auto& c : certs) {
    ReportRow row;
    row.source = "precision";
    row.n = c.n;
    row.p_n = c.p_n;
    row.set("p_next", as_int(c.p_next))
        .set("delta_exact", c.delta.to_string())
        .set("delta_float", c.s_float64 - 1.0)
        .set("float_gap", c.float_gap)
        .set("floor_float64", std::int64_t{c.floor_float64})
        .set("floor_exact", c.floor_exact.get_si())
        .set("flagged", std::int64_t{c.flagged});
    if (c.n >= 3) {
      const double r = survival_rows[c.n - 3].residual;
      row.set("survival_residual_sign", std::int64_t{(r > 0) - (r < 0)});
      row.set("spectral_residual", spectral_estimate(c.n, spectral, table).residual);
    }
    report.add(std::move(row));

    if (c.floor_float64 != 1) {
      ++float_deviations;
      if (!first_float_deviation) first_float_deviation = c.n;
    }
    if (c.flagged) {
      ++flagged;
      if (!first_flagged) first_flagged = c.n;
    }
    if (c.floor_exact != 1) {
      ++exact_failures;
      if (violations) violations->push_back("precision: exact floor != 1 at n = " + std::to_string(c.n));
    }
  }

  auto or_none = [](const std::optional<std::uint64_t>& v) -> Cell {
    return v ? Cell(as_int(*v)) : Cell(std::string("none"));
  };
  ReportRow summary;
  summary.source = "summary";
  summary.n = n_max;
  summary.set("first_float_floor_deviation", or_none(first_float_deviation))
      .set("float_floor_deviations", float_deviations)
      .set("first_flagged", or_none(first_flagged))
      .set("flagged_count", flagged)
      .set("exact_floor_failures", exact_failures)
      .set("alpha", spectral.alpha);
  report.add(std::move(summary));
  return report;
}

Report benchmark(std::uint64_t n_max, const PrimeTable& table) {
  using clock = std::chrono::steady_clock;
  if (n_max == 0 || n_max > 500) throw std::domain_error("benchmark: n_max must be in [1, 500]");
  Report report;
  const std::uint64_t top = std::max<std::uint64_t>(n_max, kGandhiFeasibleMax);
  for (std::uint64_t n = 1; n <= top; ++n) {
    if (n <= n_max) {
      const auto start = clock::now();
      const std::uint64_t found = next_prime_via_chi(n, table);
      const std::chrono::duration<double> elapsed = clock::now() - start;
      ReportRow row;
      row.source = "benchmark_chi";
      row.n = n;
      row.p_n = table.prime(n);
      row.set("result", as_int(found)).set("seconds", elapsed.count());
      report.add(std::move(row));
    }
    if (n <= kGandhiFeasibleMax) {
      const auto start = clock::now();
      const ExactRational pi = pi_n_exact(n, table);
      const std::chrono::duration<double> elapsed = clock::now() - start;
      ReportRow row;
      row.source = "benchmark_gandhi";
      row.n = n;
      row.p_n = table.prime(n);
      row.set("result", as_int(extract_prime(pi))).set("seconds", elapsed.count());
      report.add(std::move(row));
    }
  }
  return report;
}

RunResult execute(const RunConfig& config) {
  if (config.jobs == 0) throw std::invalid_argument("--jobs must be >= 1");
  RunResult result;
  if (config.command == Command::kSelberg) {
    run_selberg(config, result);
  } else {
    const PrimeTable table(config.sieve_limit);
    switch (config.command) {
      case Command::kSieveNext: run_sieve_next(config, table, result); break;
      case Command::kCertify: run_certify(config, table, result); break;
      case Command::kGandhi: run_gandhi(config, table, result); break;
      case Command::kSpectral: run_spectral(config, table, result); break;
      case Command::kSurvival: run_survival(config, table, result); break;
      case Command::kBrun: run_brun(config, table, result); break;
      case Command::kReport: {
        const Range range = resolve_range(config, 1, "report");
        if (range.lo != 1) throw std::invalid_argument("report: sweeps always start at n = 1");
        result.report = precision_study(range.hi, table, spectral_params(config, table), SurvivalParams{},
                                        &result.violations);
        break;
      }
      case Command::kBenchmark: {
        const Range range = resolve_range(config, 1, "benchmark");
        result.report = benchmark(range.hi, table);
        break;
      }
      case Command::kSelberg: break;
    }
  }
  result.status = result.violations.empty() ? exit_code::kSuccess : exit_code::kInvariantViolation;
  return result;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  RunResult result;
  try {
    result = execute(config);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return exit_code::kInvariantViolation;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return exit_code::kResourceLimit;
  } catch (const std::out_of_range& e) {
    err << "resource limit: " << e.what() << '\n';
    return exit_code::kResourceLimit;
  } catch (const std::invalid_argument& e) {
    err << "usage: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const std::domain_error& e) {
    err << "usage: " << e.what() << '\n';
    return exit_code::kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!config.out.empty() && config.out != "-") {
    file.open(config.out, std::ios::binary);
    if (!file) {
      err << "usage: cannot open output file '" << config.out << "'\n";
      return exit_code::kUsage;
    }
    sink = &file;
  }
  if (config.format == Format::kJson) {
    write_json(result.report, *sink);
  } else {
    write_csv(result.report, *sink);
  }
  sink->flush();
  for (const auto& v : result.violations) err << "invariant violation: " << v << '\n';
  return result.status;
}

}  // namespace primeform::harness
