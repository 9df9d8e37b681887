#include "linmax/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "linmax/error.hpp"
#include "linmax/rng.hpp"

namespace linmax {

namespace {

void validate(double alpha, double p) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
}

StepFunction running_max_of(std::vector<MarkedPoint> pts) {
  double initial = 0.0;
  std::vector<Jump> jumps;
  double best = 0.0;
  for (const MarkedPoint& pt : pts) {
    const double m = std::abs(pt.mark);
    if (m <= best) continue;
    best = m;
    if (pt.t == 0.0) {
      initial = m;
    } else if (!jumps.empty() && jumps.back().t == pt.t) {
      jumps.back().value = m;
    } else {
      jumps.push_back({pt.t, m});
    }
  }
  return StepFunction(initial, std::move(jumps));
}

}  // namespace

double default_epsilon(double alpha) {
  validate(alpha, 1.0);
  const double mass = 40.0 * std::numbers::ln10;
  double eps = std::pow(mass, -1.0 / alpha);
  while (std::exp(-std::pow(eps, -alpha)) >= 1e-40) eps = std::nextafter(eps, 0.0);
  return eps;
}

MarkedPointSet sample_poisson_points(double alpha, double p, double epsilon,
                                     std::uint64_t seed) {
  validate(alpha, p);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");

  MarkedPointSet out;
  out.epsilon = epsilon;
  out.alpha = alpha;
  out.p = p;
  out.r = 1.0 - p;
  const double mass = std::pow(epsilon, -alpha);
  out.truncation_bound = std::exp(-mass);

  Engine count_rng = make_engine(seed, Stream::PointCount);
  Engine time_rng = make_engine(seed, Stream::PointTime);
  Engine mag_rng = make_engine(seed, Stream::PointMagnitude);
  Engine sign_rng = make_engine(seed, Stream::PointSign);

  const auto count = std::poisson_distribution<long long>(mass)(count_rng);
  out.points.resize(static_cast<std::size_t>(count));
  const double inv_alpha = -1.0 / alpha;
  for (auto& pt : out.points) {
    pt.t = open_unit(time_rng);
    const double m = epsilon * std::pow(open_unit(mag_rng), inv_alpha);
    pt.mark = open_unit(sign_rng) < p ? m : -m;
  }
  return out;
}

StepPair phi_split(const MarkedPointSet& pts) {
  std::vector<MarkedPoint> pos;
  std::vector<MarkedPoint> neg;
  for (const MarkedPoint& pt : pts.points) {
    if (!(pt.t >= 0.0 && pt.t <= 1.0)) throw DomainError("point time outside [0, 1]");
    if (pt.mark > 0.0) pos.push_back(pt);
    if (pt.mark < 0.0) neg.push_back(pt);
  }
  const auto by_time = [](const MarkedPoint& a, const MarkedPoint& b) { return a.t < b.t; };
  std::sort(pos.begin(), pos.end(), by_time);
  std::sort(neg.begin(), neg.end(), by_time);
  return {running_max_of(std::move(pos)), running_max_of(std::move(neg))};
}

LimitSpec LimitSpec::make(double alpha, double p, CoefficientModel model, double epsilon) {
  validate(alpha, p);
  LimitSpec spec{alpha, p, 1.0 - p, std::move(model), epsilon};
  if (!(epsilon > 0.0)) spec.epsilon = default_epsilon(alpha);
  return spec;
}

StepFunction sample_limit_path(const LimitSpec& spec, std::uint64_t seed) {
  const CPlusMinus c =
      sample_c_plus_minus(spec.coefficients, derive_seed(seed, Stream::LimitCoefficients));
  const MarkedPointSet pts = sample_poisson_points(
      spec.alpha, spec.p, spec.epsilon, derive_seed(seed, Stream::LimitPoints));
  const auto [w1, w2] = phi_split(pts);
  return pointwise_max(w1.scaled(c.plus), w2.scaled(c.minus));
}

LimitMarginal::LimitMarginal(const LimitSpec& spec, std::size_t mc_draws, std::uint64_t seed)
    : alpha_(spec.alpha) {
  const auto kappa = [&](const CPlusMinus& c) {
    return spec.p * std::pow(c.plus, spec.alpha) + spec.r * std::pow(c.minus, spec.alpha);
  };
  if (spec.coefficients.is_deterministic()) {
    exact_ = true;
    kappas_.push_back(kappa(sample_c_plus_minus(spec.coefficients, 0)));
    return;
  }
  if (mc_draws == 0) throw DomainError("Monte Carlo CDF needs mc_draws >= 1");
  const std::uint64_t base = derive_seed(seed, Stream::LimitCoefficients);
  kappas_.reserve(mc_draws);
  for (std::size_t k = 0; k < mc_draws; ++k) {
    kappas_.push_back(kappa(sample_c_plus_minus(spec.coefficients, derive_seed(base, k))));
  }
}

template <class F>
CdfEstimate LimitMarginal::average(F&& conditional) const {
  if (exact()) return {conditional(kappas_.front()), 0.0, "exact"};
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double k : kappas_) {
    const double v = conditional(k);
    sum += v;
    sum_sq += v * v;
  }
  const double m = static_cast<double>(kappas_.size());
  const double mean = sum / m;
  const double var = m > 1 ? std::max(0.0, (sum_sq - m * mean * mean) / (m - 1.0)) : 0.0;
  return {mean, std::sqrt(var / m), "monte_carlo"};
}

CdfEstimate LimitMarginal::cdf(double t, double x) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("time outside [0, 1]");
  if (!(x > 0.0)) throw DomainError("limit CDF requires x > 0");
  const double tail = std::pow(x, -alpha_);
  return average([&](double kappa) { return std::exp(-t * kappa * tail); });
}

CdfEstimate LimitMarginal::bivariate_cdf(double s, double t, double x, double y) const {
  if (!(s >= 0.0 && s <= t && t <= 1.0)) throw DomainError("need 0 <= s <= t <= 1");
  if (!(x > 0.0 && y > 0.0)) throw DomainError("bivariate CDF requires positive levels");
  const double nx = std::pow(x, -alpha_);
  const double ny = std::pow(y, -alpha_);
  // No point above y on [0, t], and (when x < y) none above x on [0, s].
  if (x >= y) return average([&](double kappa) { return std::exp(-t * kappa * ny); });
  return average([&](double kappa) { return std::exp(-s * kappa * nx - (t - s) * kappa * ny); });
}

double LimitMarginal::operator()(double t, double x) const {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    // M(t) = 0 exactly when t * kappa = 0.
    const auto zero = std::count_if(kappas_.begin(), kappas_.end(),
                                    [t](double k) { return t * k == 0.0; });
    return static_cast<double>(zero) / static_cast<double>(kappas_.size());
  }
  return cdf(t, x).value;
}

CdfEstimate limit_marginal_cdf(const LimitSpec& spec, double t, double x, std::size_t mc_draws,
                               std::uint64_t seed) {
  if (!(x > 0.0)) throw DomainError("limit CDF requires x > 0");
  return LimitMarginal(spec, mc_draws, seed).cdf(t, x);
}

CdfEstimate limit_bivariate_cdf(const LimitSpec& spec, double s, double t, double x, double y,
                                std::size_t mc_draws, std::uint64_t seed) {
  return LimitMarginal(spec, mc_draws, seed).bivariate_cdf(s, t, x, y);
}

}  // namespace linmax
