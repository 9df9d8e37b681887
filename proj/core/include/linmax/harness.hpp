#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "linmax/coefficients.hpp"
#include "linmax/config.hpp"

namespace linmax {

struct MarginalRow {
  std::size_t n = 0;
  double t = 1.0;
  std::size_t sample_size = 0;
  double ks_statistic = 0.0;
  double p_value = 1.0;
  bool approximate = false;  // asymptotic p-value with fewer than 50 samples
  bool degenerate = false;   // fewer than two samples
};

struct ShrinkageRow {
  std::size_t n = 0;
  std::size_t sample_size = 0;
  double delta = 0.0;
  double exceed_fraction = 0.0;  // fraction of replicates with d_M2(W_n, M_n) > delta
  double median = 0.0;
  double max = 0.0;
};

struct TruncationRow {
  std::size_t n = 0;
  std::size_t q = 0;
  std::size_t sample_size = 0;
  double epsilon = 0.0;
  double exceed_fraction = 0.0;  // fraction with d*_M1(M_n, M_n,q) > epsilon
  double median = 0.0;
  double max = 0.0;
  double max_bound = 0.0;             // largest per-path coupling bound
  std::size_t bound_violations = 0;   // distances above their path's bound + tol
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  bool calibration = true;  // a desk-scale threshold, not a theorem
};

struct ConvergenceReport {
  std::string experiment;  // marginal, shrinkage, truncation or prop33
  std::uint64_t master_seed = 0;
  std::vector<MarginalRow> marginal;
  std::vector<ShrinkageRow> shrinkage;
  std::vector<TruncationRow> truncation;
  std::vector<Check> checks;
  ConditionReport conditions;
  std::size_t coefficient_order = 0;  // realized head length - 1
  double wall_clock_seconds = 0.0;
  std::string config_json;

  bool all_checks_pass() const;
};

/// Seed of replicate `index`: derive_seed(master_seed, index). Pairwise
/// distinct for distinct indices.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t index);

/// Realized coefficient head order J used by every experiment: the exact
/// order for deterministic models, otherwise
/// min(truncation_order(model, reference_tol), max_order).
std::size_t reference_order(const ExperimentConfig& config);

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0: hardware
/// concurrency). fn must write only to slots owned by i.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

/// Refuses configurations whose coefficient model fails the summability
/// conditions at the configured alpha: throws ConditionError naming the
/// failed condition. Returns the report otherwise.
ConditionReport require_conditions(const ExperimentConfig& config);

/// KS of M_n(t) against the limit marginal for every (n, t).
ConvergenceReport run_marginal_convergence(const ExperimentConfig& config);

/// Exceedance frequency and median of d_M2(W_n, M_n) built from shared
/// innovations and coefficients.
ConvergenceReport run_metric_shrinkage(const ExperimentConfig& config);

/// d*_M1(M_n, M_n,q) for coupled order-q approximants, with per-path
/// coupling bounds.
ConvergenceReport run_truncation_study(const ExperimentConfig& config);

/// KS of W_n(t) against the limit marginal for every (n, t).
ConvergenceReport run_proposition33(const ExperimentConfig& config);

/// Dispatch by experiment name. Throws ConfigError for unknown names.
ConvergenceReport run_experiment(const ExperimentConfig& config, const std::string& name);

/// One row per measurement:
/// experiment,n,t,q,statistic,value,sample_size,master_seed.
void write_report_csv(std::ostream& out, const ConvergenceReport& report);
std::string report_to_json(const ConvergenceReport& report);

/// Writes <dir>/<experiment>_report.{csv,json}; returns the paths.
std::vector<std::filesystem::path> write_report_files(const ConvergenceReport& report,
                                                      const std::filesystem::path& dir);

}  // namespace linmax
