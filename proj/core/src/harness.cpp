#include "linmax/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "linmax/error.hpp"
#include "linmax/limit_process.hpp"
#include "linmax/linear_process.hpp"
#include "linmax/rng.hpp"
#include "linmax/skorohod.hpp"
#include "linmax/stats.hpp"

namespace linmax {

namespace {

constexpr std::uint64_t kLimitCdfStream = 0x6c696d6974636466ULL;  // "limitcdf"

using Clock = std::chrono::steady_clock;

CoefficientRealization replicate_coefficients(const ExperimentConfig& cfg, std::size_t order,
                                              std::uint64_t seed) {
  return sample_coefficients(cfg.model, order, derive_seed(seed, Stream::Coefficients));
}

ConvergenceReport start_report(const ExperimentConfig& cfg, std::string experiment) {
  ConvergenceReport rep;
  rep.experiment = std::move(experiment);
  rep.master_seed = cfg.master_seed;
  rep.conditions = require_conditions(cfg);
  rep.coefficient_order = reference_order(cfg);
  rep.config_json = config_to_json(cfg);
  return rep;
}

std::string label(const char* base, std::size_t n, std::optional<double> t = std::nullopt,
                  std::optional<std::size_t> q = std::nullopt) {
  std::ostringstream s;
  s << base << "[n=" << n;
  if (t) s << ",t=" << *t;
  if (q) s << ",q=" << *q;
  s << ']';
  return s.str();
}

/// Samples of a per-path functional at every t in the grid, for one n.
using PathFunctional = std::function<StepFunction(const ExperimentConfig&, std::size_t order,
                                                  std::size_t n, std::uint64_t seed)>;

ConvergenceReport run_ks_experiment(const ExperimentConfig& cfg, std::string name,
                                    const PathFunctional& functional) {
  const auto started = Clock::now();
  ConvergenceReport rep = start_report(cfg, std::move(name));
  const LimitMarginal limit(LimitSpec::make(cfg.law.alpha, cfg.law.p, cfg.model), cfg.mc_draws,
                            derive_seed(cfg.master_seed, kLimitCdfStream));
  const std::size_t N = cfg.replicates;
  const std::size_t T = cfg.t_grid.size();

  for (std::size_t n : cfg.n_grid) {
    std::vector<double> values(N * T);
    parallel_for(N, cfg.workers, [&](std::size_t r) {
      const StepFunction f =
          functional(cfg, rep.coefficient_order, n, replicate_seed(cfg.master_seed, r));
      for (std::size_t k = 0; k < T; ++k) values[k * N + r] = f(cfg.t_grid[k]);
    });
    for (std::size_t k = 0; k < T; ++k) {
      const double t = cfg.t_grid[k];
      const auto samples = std::span<const double>(values).subspan(k * N, N);
      const KsResult ks = ks_test(samples, [&](double x) { return limit(t, x); });
      rep.marginal.push_back({n, t, N, ks.statistic, ks.p_value, ks.approximate, N < 2});
    }
  }

  for (double t : cfg.t_grid) {
    const MarginalRow* first = nullptr;
    const MarginalRow* last = nullptr;
    for (const auto& row : rep.marginal) {
      if (row.t != t) continue;
      if (!first) first = &row;
      last = &row;
    }
    rep.checks.push_back({label("ks_max", last->n, t), last->ks_statistic, cfg.thresholds.ks_max,
                          last->ks_statistic <= cfg.thresholds.ks_max, true});
    if (cfg.thresholds.require_trend && first != last) {
      rep.checks.push_back({label("ks_trend", last->n, t), last->ks_statistic,
                            first->ks_statistic, last->ks_statistic <= first->ks_statistic, true});
    }
  }
  rep.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return rep;
}

}  // namespace

bool ConvergenceReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::size_t reference_order(const ExperimentConfig& cfg) {
  if (const auto* d = std::get_if<Deterministic>(&cfg.model.family())) {
    return d->values.size() - 1;
  }
  try {
    return std::min(truncation_order(cfg.model, cfg.reference_tol), cfg.max_order);
  } catch (const DomainError&) {
    return cfg.max_order;
  }
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(index));
}

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

ConditionReport require_conditions(const ExperimentConfig& cfg) {
  ConditionReport rep = check_moment_conditions(cfg.model, cfg.law.alpha);
  if (const auto failed = rep.first_failure()) {
    throw ConditionError(condition_name(*failed), "coefficient model refused: " + rep.explanation);
  }
  return rep;
}

ConvergenceReport run_marginal_convergence(const ExperimentConfig& config) {
  return run_ks_experiment(
      config, "marginal",
      [](const ExperimentConfig& cfg, std::size_t order, std::size_t n, std::uint64_t seed) {
        const auto real = replicate_coefficients(cfg, order, seed);
        return partial_maxima(simulate_path(cfg.law, real, n, seed), cfg.convention);
      });
}

ConvergenceReport run_proposition33(const ExperimentConfig& config) {
  return run_ks_experiment(
      config, "prop33",
      [](const ExperimentConfig& cfg, std::size_t order, std::size_t n, std::uint64_t seed) {
        const auto real = replicate_coefficients(cfg, order, seed);
        const auto path = simulate_path(cfg.law, real, n, seed);
        const CPlusMinus c = c_plus_minus(real);
        return wn_process(path.innovations(), path.a_n, c.plus, c.minus);
      });
}

ConvergenceReport run_metric_shrinkage(const ExperimentConfig& cfg) {
  const auto started = Clock::now();
  ConvergenceReport rep = start_report(cfg, "shrinkage");
  const std::size_t N = cfg.replicates;

  for (std::size_t n : cfg.n_grid) {
    std::vector<double> d(N);
    parallel_for(N, cfg.workers, [&](std::size_t r) {
      const std::uint64_t seed = replicate_seed(cfg.master_seed, r);
      const auto real = replicate_coefficients(cfg, rep.coefficient_order, seed);
      const auto path = simulate_path(cfg.law, real, n, seed);
      const CPlusMinus c = c_plus_minus(real);
      const StepFunction w = wn_process(path.innovations(), path.a_n, c.plus, c.minus);
      d[r] = d_m2(w, partial_maxima(path, cfg.convention), cfg.metric_tol);
    });
    const auto exceed = std::count_if(d.begin(), d.end(), [&](double v) { return v > cfg.delta; });
    rep.shrinkage.push_back({n, N, cfg.delta, static_cast<double>(exceed) / static_cast<double>(N),
                             median(d), *std::max_element(d.begin(), d.end())});
  }

  const auto& first = rep.shrinkage.front();
  const auto& last = rep.shrinkage.back();
  rep.checks.push_back({label("exceedance_max", last.n), last.exceed_fraction,
                        cfg.thresholds.exceedance_max,
                        last.exceed_fraction <= cfg.thresholds.exceedance_max, true});
  if (cfg.thresholds.require_trend && rep.shrinkage.size() > 1) {
    rep.checks.push_back({label("exceedance_trend", last.n), last.exceed_fraction,
                          first.exceed_fraction, last.exceed_fraction <= first.exceed_fraction,
                          true});
  }
  rep.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return rep;
}

ConvergenceReport run_truncation_study(const ExperimentConfig& cfg) {
  const auto started = Clock::now();
  ConvergenceReport rep = start_report(cfg, "truncation");
  const std::size_t N = cfg.replicates;
  const std::size_t Q = cfg.q_grid.size();
  const std::size_t J = rep.coefficient_order;
  const std::size_t K = std::max(J, *std::max_element(cfg.q_grid.begin(), cfg.q_grid.end()));

  for (std::size_t n : cfg.n_grid) {
    std::vector<double> dist(N * Q);
    std::vector<double> bound(N * Q);
    parallel_for(N, cfg.workers, [&](std::size_t r) {
      const std::uint64_t seed = replicate_seed(cfg.master_seed, r);
      const auto real = replicate_coefficients(cfg, J, seed);
      // One innovation draw of order K serves the full model and every approximant.
      CoefficientRealization padded = real;
      padded.head.resize(K + 1, 0.0);
      const auto path = simulate_path(cfg.law, padded, n, seed);
      const StepFunction m = partial_maxima(path);
      for (std::size_t k = 0; k < Q; ++k) {
        const std::size_t q = cfg.q_grid[k];
        const auto approx = finite_order_approx(real, q);
        const auto xq = moving_average(approx.head, std::span<const double>(path.z).subspan(K - q));
        dist[k * N + r] = d_m1_monotone(m, partial_maxima(xq, path.a_n), cfg.metric_tol);
        bound[k * N + r] = coupling_bound(path, padded.head, approx.head);
      }
    });
    for (std::size_t k = 0; k < Q; ++k) {
      const auto d = std::span<const double>(dist).subspan(k * N, N);
      const auto b = std::span<const double>(bound).subspan(k * N, N);
      TruncationRow row{n, cfg.q_grid[k], N, cfg.epsilon};
      std::size_t exceed = 0;
      for (std::size_t r = 0; r < N; ++r) {
        exceed += d[r] > cfg.epsilon;
        row.bound_violations += d[r] > b[r] + cfg.metric_tol;
      }
      row.exceed_fraction = static_cast<double>(exceed) / static_cast<double>(N);
      row.median = median({d.begin(), d.end()});
      row.max = *std::max_element(d.begin(), d.end());
      row.max_bound = *std::max_element(b.begin(), b.end());
      rep.truncation.push_back(row);
    }
  }

  for (std::size_t i = 0; i < rep.truncation.size(); i += Q) {
    const auto rows = std::span<const TruncationRow>(rep.truncation).subspan(i, Q);
    const auto& widest = *std::max_element(rows.begin(), rows.end(),
                                           [](const auto& a, const auto& b) { return a.q < b.q; });
    rep.checks.push_back({label("truncation_median_max", widest.n, std::nullopt, widest.q),
                          widest.median, cfg.thresholds.truncation_median_max,
                          widest.median <= cfg.thresholds.truncation_median_max, true});
    std::size_t violations = 0;
    for (const auto& row : rows) violations += row.bound_violations;
    rep.checks.push_back({label("coupling_bound_domination", widest.n),
                          static_cast<double>(violations), 0.0, violations == 0, false});
    if (cfg.thresholds.require_trend && Q > 1) {
      std::vector<TruncationRow> sorted(rows.begin(), rows.end());
      std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.q < b.q; });
      double worst_increase = 0.0;
      for (std::size_t k = 1; k < sorted.size(); ++k) {
        worst_increase = std::max(worst_increase, sorted[k].median - sorted[k - 1].median);
      }
      rep.checks.push_back({label("truncation_trend", widest.n), worst_increase, 0.0,
                            worst_increase <= 0.0, true});
    }
  }
  rep.wall_clock_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return rep;
}

ConvergenceReport run_experiment(const ExperimentConfig& config, const std::string& name) {
  if (name == "marginal") return run_marginal_convergence(config);
  if (name == "shrinkage") return run_metric_shrinkage(config);
  if (name == "truncation") return run_truncation_study(config);
  if (name == "prop33") return run_proposition33(config);
  throw ConfigError("experiment",
                    "unknown experiment '" + name + "' (marginal, shrinkage, truncation, prop33)");
}

}  // namespace linmax
