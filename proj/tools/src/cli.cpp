#include "linmax_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "linmax/config.hpp"
#include "linmax/error.hpp"
#include "linmax/harness.hpp"
#include "linmax/limit_process.hpp"
#include "linmax/linear_process.hpp"
#include "linmax/rng.hpp"
#include "linmax/skorohod.hpp"

namespace linmax::cli {

namespace {

struct RunOptions {
  std::string config;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("-c,--config", o.config, "TOML configuration file")->required();
  cmd->add_option("--set", o.overrides, "override a config key, e.g. --set law.alpha=1.5");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--workers", o.workers, "worker threads (0: all cores)");
  cmd->add_option("--out", o.out, "output directory");
}

ExperimentConfig load(const RunOptions& o) {
  ExperimentConfig cfg = load_config(o.config, o.overrides);
  if (o.seed) cfg.master_seed = *o.seed;
  if (o.workers) cfg.workers = *o.workers;
  if (o.out) cfg.output = *o.out;
  validate(cfg);
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text << '\n';
}

int cmd_simulate(const RunOptions& o, std::ostream& out) {
  const ExperimentConfig cfg = load(o);
  const std::size_t order = reference_order(cfg);
  const CoefficientRealization real =
      sample_coefficients(cfg.model, order, derive_seed(cfg.master_seed, Stream::Coefficients));
  const CPlusMinus c = c_plus_minus(real);

  const std::filesystem::path dir = cfg.output;
  std::filesystem::create_directories(dir);
  std::size_t files = 0;
  for (std::size_t n : cfg.n_grid) {
    const SimulatedPath path = simulate_path(cfg.law, real, n, cfg.master_seed);
    const std::string suffix = "_n" + std::to_string(n);
    {
      std::ofstream csv(dir / ("path" + suffix + ".csv"));
      write_path_csv(csv, path);
    }
    write_file(dir / ("mn" + suffix + ".json"), to_json(partial_maxima(path, cfg.convention)));
    write_file(dir / ("wn" + suffix + ".json"),
               to_json(wn_process(path.innovations(), path.a_n, c.plus, c.minus)));
    files += 3;
  }
  const LimitSpec spec = LimitSpec::make(cfg.law.alpha, cfg.law.p, cfg.model);
  write_file(dir / "limit_path.json",
             to_json(sample_limit_path(spec, derive_seed(cfg.master_seed, Stream::LimitPoints))));
  ++files;

  out << "simulated " << cfg.n_grid.size() << " path(s), order " << order << ", C+ " << c.plus
      << ", C- " << c.minus << ", seed " << cfg.master_seed << ": " << files << " files in "
      << dir.string() << '\n';
  return kOk;
}

int cmd_metric(const std::string& f_path, const std::string& g_path, const std::string& metric,
               double tol, std::ostream& out, std::ostream& err) {
  if (metric != "uniform" && metric != "m2" && metric != "m1_monotone") {
    err << "error: unknown metric '" << metric << "' (uniform, m2, m1_monotone)\n";
    return kRefused;
  }
  const StepFunction f = step_function_from_json(read_file(f_path));
  const StepFunction g = step_function_from_json(read_file(g_path));
  double value = 0.0;
  if (metric == "uniform") {
    value = d_uniform(f, g);
  } else if (metric == "m2") {
    value = d_m2(f, g, tol);
  } else {
    value = d_m1_monotone(f, g, tol);
  }
  const nlohmann::json j{{"metric", metric}, {"value", value}, {"tol", tol}, {"certified", true}};
  out << j.dump() << '\n';
  return kOk;
}

int cmd_verify(const RunOptions& o, const std::string& experiment, std::ostream& out) {
  const ExperimentConfig cfg = load(o);
  const ConvergenceReport rep = run_experiment(cfg, experiment);
  const auto files = write_report_files(rep, cfg.output);
  for (const auto& c : rep.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.value << " vs " << c.threshold
        << (c.calibration ? " (calibration)" : "") << '\n';
  }
  out << experiment << ": " << (rep.all_checks_pass() ? "passed" : "failed") << " in "
      << rep.wall_clock_seconds << " s; report " << files.back().string() << '\n';
  return rep.all_checks_pass() ? kOk : kThresholdsFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial maxima of heavy-tailed linear processes with random coefficients",
               "linmax"};
  app.require_subcommand(1);

  RunOptions sim;
  auto* simulate = app.add_subcommand("simulate", "simulate paths and write CSV/JSON files");
  add_run_options(simulate, sim);

  std::string f_path, g_path, metric = "m2";
  double tol = kDefaultMetricTol;
  auto* metric_cmd = app.add_subcommand("metric", "distance between two step-function files");
  metric_cmd->add_option("f", f_path, "first step function (JSON)")->required();
  metric_cmd->add_option("g", g_path, "second step function (JSON)")->required();
  metric_cmd->add_option("--metric", metric, "uniform, m2 or m1_monotone");
  metric_cmd->add_option("--tol", tol, "certified absolute tolerance")->check(CLI::PositiveNumber);

  RunOptions ver;
  std::string experiment;
  auto* verify = app.add_subcommand("verify", "run an experiment and check its thresholds");
  add_run_options(verify, ver);
  verify->add_option("-e,--experiment", experiment, "marginal, shrinkage, truncation or prop33")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kRefused;
  }

  try {
    if (*simulate) return cmd_simulate(sim, out);
    if (*metric_cmd) return cmd_metric(f_path, g_path, metric, tol, out, err);
    return cmd_verify(ver, experiment, out);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kRefused;
  } catch (const ConditionError& e) {
    err << "condition refused: " << e.condition() << ": " << e.what() << '\n';
    return kRefused;
  } catch (const UnsupportedFamilyError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kRefused;
  } catch (const MonotonicityError& e) {
    err << "monotonicity error: " << e.what() << '\n';
    return kRuntimeFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

}  // namespace linmax::cli
