#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linmax/coefficients.hpp"
#include "linmax/innovations.hpp"
#include "linmax/linear_process.hpp"

namespace linmax {

/// Pass/fail thresholds applied by `linmax verify`. These are calibration
/// choices for desk-scale runs, not properties of the limit theorems.
struct Thresholds {
  double ks_max = 0.05;                  // KS distance at the largest n
  double exceedance_max = 0.05;          // P(d_M2(W_n, M_n) > delta) at the largest n
  double truncation_median_max = 1e-4;   // median d*_M1(M_n, M_n,q) at the largest q
  bool require_trend = true;             // statistics must not grow with n (or q)
};

struct ExperimentConfig {
  TailLaw law;
  CoefficientModel model = CoefficientModel::deterministic({1.0});
  std::vector<std::size_t> n_grid{100, 1000, 10000};
  std::size_t replicates = 1000;
  std::vector<double> t_grid{1.0};
  double delta = 0.25;    // threshold for d_M2(W_n, M_n) exceedances
  double epsilon = 0.25;  // threshold for d*_M1(M_n, M_n,q) exceedances
  std::vector<std::size_t> q_grid{2, 20};
  std::uint64_t master_seed = 0;
  std::string output = "linmax-out";
  std::size_t workers = 0;  // 0: all hardware threads
  std::size_t mc_draws = 20000;
  double reference_tol = 1e-12;  // tail-sum target for random coefficient heads
  std::size_t max_order = 4096;  // cap on the realized head length
  InitialConvention convention = InitialConvention::FirstValue;
  double metric_tol = 1e-9;
  Thresholds thresholds;
};

/// Parses a TOML document. `overrides` are "dotted.key=value" strings whose
/// value is TOML syntax, applied before interpretation.
/// Throws ConfigError naming the offending key; UnsupportedFamilyError for an
/// unknown model.kind.
ExperimentConfig parse_config(std::string_view toml_text,
                              std::span<const std::string> overrides = {});

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides = {});

/// Checks the structural invariants (grids, counts, thresholds).
/// Throws ConfigError.
void validate(const ExperimentConfig& config);

/// JSON echo of the interpreted configuration.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace linmax
