// Batch front end: parses an experiment config, executes a run or a suite,
// and emits trajectory/summary/plot files.
//
// Exit codes: 0 success, 1 validation error, 2 numerical abort
// (NaN or domain violation), 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ferero/bench.hpp"
#include "ferero/config.hpp"
#include "ferero/emit.hpp"
#include "ferero/metrics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int parallel = 1;
  bool plot = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ferero::IoError("cannot read config file: " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

std::filesystem::path resolve_out_dir(const CliOptions& cli,
                                      const ferero::ExperimentSpec& spec) {
  if (!cli.out_dir.empty()) return cli.out_dir;
  if (!spec.output.dir.empty()) return spec.output.dir;
  if (const char* env = std::getenv("FERERO_OUT"); env && *env) return env;
  return ".";
}

// Resolves the declarative preference into matrices; controlled-ascent
// cones need the objectives at theta_0, which depend on the run seed.
ferero::Preference resolve_preference(const ferero::PreferenceSpec& pspec,
                                      const ferero::Problem& problem,
                                      const ferero::SolverConfig& cfg) {
  if (!pspec.needs_initial_objectives())
    return pspec.resolve(problem.num_objectives());
  ferero::RandomStream init_rng = ferero::RandomStream::substream(cfg.seed, 0);
  const ferero::Vector theta0 = ferero::initial_theta(problem, cfg, init_rng);
  return pspec.resolve(problem.num_objectives(), problem.objectives(theta0));
}

int do_run(const CliOptions& cli) {
  ferero::ExperimentSpec spec = ferero::parse_config(read_file(cli.config_path));
  if (!spec.preference)
    throw ferero::ConfigError("run: config has no \"preference\" block");
  if (cli.seed_set) spec.solver.seed = cli.seed;

  const ferero::Problem problem = spec.problem.build();
  const ferero::Preference pref =
      resolve_preference(*spec.preference, problem, spec.solver);
  const ferero::RunReport report = ferero::run(problem, pref, spec.solver);

  ferero::EmitOptions opts{resolve_out_dir(cli, spec), cli.plot};
  const auto files = ferero::emit_run(report, spec, opts);
  std::cout << "final F = [" << report.f_final.transpose()
            << "], kkt = " << report.final_kkt
            << ", |h|_1 = " << report.final_eq_violation_l1 << "\n";
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  return kExitOk;
}

int do_suite(const CliOptions& cli) {
  ferero::ExperimentSpec spec = ferero::parse_config(read_file(cli.config_path));
  if (!spec.suite)
    throw ferero::ConfigError("suite: config has no \"preferences\" block");
  if (cli.seed_set) spec.solver.seed = cli.seed;

  const ferero::Problem problem = spec.problem.build();
  std::vector<ferero::Preference> prefs;
  const auto pref_specs = spec.suite->expand();
  for (std::size_t i = 0; i < pref_specs.size(); ++i) {
    ferero::SolverConfig cfg = spec.solver;
    cfg.seed = spec.solver.seed + static_cast<std::uint64_t>(i);
    prefs.push_back(resolve_preference(pref_specs[i], problem, cfg));
  }

  const ferero::SuiteReport suite = ferero::run_suite(
      problem, prefs, spec.solver, cli.parallel, spec.hv_ref);

  ferero::EmitOptions opts{resolve_out_dir(cli, spec), cli.plot};
  const auto files = ferero::emit_suite(suite, spec, opts);

  std::size_t ok = 0;
  for (const auto& r : suite.runs)
    if (r.ok()) ++ok;
  std::cout << ok << "/" << suite.runs.size()
            << " runs succeeded, hypervolume = " << suite.hypervolume
            << ", mean kkt = " << suite.mean_kkt << "\n";
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
  return ok > 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference-guided multi-objective optimization runner"};
  app.require_subcommand(1);

  CliOptions cli;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", cli.config_path, "experiment config (JSON)")
        ->required();
    sub->add_option("--seed", cli.seed, "override the config seed")
        ->each([&](const std::string&) { cli.seed_set = true; });
    sub->add_option("--out", cli.out_dir, "output directory");
    sub->add_option("--parallel", cli.parallel, "worker count (suite only)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--plot", cli.plot, "emit an SVG scatter of final points");
  };
  CLI::App* run_cmd = app.add_subcommand("run", "execute a single run");
  CLI::App* suite_cmd =
      app.add_subcommand("suite", "execute one run per preference");
  add_common(run_cmd);
  add_common(suite_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) return do_run(cli);
    return do_suite(cli);
  } catch (const ferero::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ferero::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ferero::UnsupportedConstraintError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ferero::DomainError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const ferero::NumericalError& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
