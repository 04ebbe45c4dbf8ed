#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>

#include "primeform/harness/harness.hpp"

namespace primeform::harness {

namespace {

struct SubcommandSpec {
  const char* name;
  Command command;
  const char* description;
};

constexpr SubcommandSpec kSubcommands[] = {
    {"sieve-next", Command::kSieveNext, "Find p_{n+1} as the least survivor of the coprimality filter"},
    {"certify", Command::kCertify, "Exact harmonic certificate floor(S_n) = 1 with the float probe"},
    {"gandhi", Command::kGandhi, "Exact Gandhi evaluation, prime extraction and Monte Carlo check"},
    {"spectral", Command::kSpectral, "Cipolla drift plus von Mangoldt oscillation estimator"},
    {"survival", Command::kSurvival, "Survival-dynamics, capacity, Mertens and entropy sweeps"},
    {"selberg", Command::kSelberg, "Minimise the Selberg quadratic form for one (x, z)"},
    {"brun", Command::kBrun, "Brun partial sums over twin primes up to X"},
    {"report", Command::kReport, "Float-vs-exact precision study with estimator residuals"},
    {"benchmark", Command::kBenchmark, "Wall-time of the sieve identity and Gandhi evaluation"},
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"primeform: exact and phenomenological expressions for the n-th prime"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string format = "csv";
  std::string model = "survival";
  std::uint64_t n = 0;
  std::uint64_t n_min = 0;
  std::uint64_t n_max = 0;
  double alpha = 0.0;

  app.add_option("--sieve-limit", config.sieve_limit, "Sieve oracle bound")
      ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{4'000'000'000}));
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", config.out, "Output path (default: standard output)");
  app.add_option("--jobs", config.jobs, "Worker threads for per-n sweeps")->check(CLI::PositiveNumber);

  std::map<CLI::App*, Command> commands;
  for (const auto& spec : kSubcommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    commands[sub] = spec.command;
    // Global options are accepted after the subcommand too.
    sub->fallthrough();
    switch (spec.command) {
      case Command::kSelberg:
        sub->add_option("--x", config.x, "Sieve range x")->required()->check(CLI::PositiveNumber);
        sub->add_option("--z", config.z, "Sieve level z")->required()->check(CLI::PositiveNumber);
        break;
      case Command::kBrun:
        sub->add_option("--X", config.x_bound, "Upper bound on p + 2")->required()->check(CLI::PositiveNumber);
        break;
      default: {
        auto* single = sub->add_option("--n", n, "Single ordinal")->check(CLI::PositiveNumber);
        auto* upper = sub->add_option("--n-max", n_max, "Sweep upper ordinal")->check(CLI::PositiveNumber);
        single->excludes(upper);
        if (spec.command != Command::kReport) {
          sub->add_option("--n-min", n_min, "Sweep lower ordinal")->check(CLI::PositiveNumber)->excludes(single);
        }
        break;
      }
    }
    if (spec.command == Command::kGandhi) {
      sub->add_option("--samples", config.samples, "Monte Carlo draws per n (0 disables)");
      sub->add_option("--seed", config.seed, "Monte Carlo seed");
      sub->add_flag("--allow-large-gandhi", config.allow_large_gandhi, "Permit n above the feasibility bound");
    }
    if (spec.command == Command::kSpectral || spec.command == Command::kReport) {
      sub->add_option("--alpha", alpha, "Fixed resonance amplitude (skips calibration)");
      sub->add_option("--calib-lo", config.calib_lo, "Calibration window start")->check(CLI::PositiveNumber);
      sub->add_option("--calib-hi", config.calib_hi, "Calibration window end")->check(CLI::PositiveNumber);
    }
    if (spec.command == Command::kSurvival) {
      sub->add_option("--model", model, "Estimator to sweep")
          ->check(CLI::IsMember({"survival", "capacity", "capacity-fixed-point", "mertens", "entropy"}));
    }
  }

  std::vector<const char*> argv{"primeform"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kSuccess;
  } catch (const CLI::ParseError& e) {
    std::ostringstream sink;
    const int code = app.exit(e, sink, sink);
    err << sink.str();
    return code == 0 ? exit_code::kSuccess : exit_code::kUsage;
  }

  for (auto* sub : app.get_subcommands()) {
    config.command = commands.at(sub);
    auto given = [sub](const char* name) {
      const CLI::Option* opt = sub->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--n")) config.n = n;
    if (given("--n-min")) config.n_min = n_min;
    if (given("--n-max")) config.n_max = n_max;
    if (given("--alpha")) config.alpha_override = alpha;
  }
  config.format = format == "json" ? Format::kJson : Format::kCsv;
  if (model == "capacity") config.model = SurvivalModel::kCapacity;
  if (model == "capacity-fixed-point") config.model = SurvivalModel::kCapacityFixedPoint;
  if (model == "mertens") config.model = SurvivalModel::kMertens;
  if (model == "entropy") config.model = SurvivalModel::kEntropy;
  return run(config, out, err);
}

}  // namespace primeform::harness
