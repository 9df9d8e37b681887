#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linmax/coefficients.hpp"
#include "linmax/skorohod.hpp"
#include "linmax/step_function.hpp"

namespace linmax {

struct MarkedPoint {
  double t = 0.0;
  double mark = 0.0;  // nonzero
};

/// Points of a Poisson process on [0,1] x (R \ {0}) with intensity
/// Leb x mu, mu(dx) = (p 1{x>0} + r 1{x<0}) alpha |x|^(-alpha-1) dx,
/// restricted to |x| > epsilon.
struct MarkedPointSet {
  std::vector<MarkedPoint> points;
  double epsilon = 1.0;
  double alpha = 1.0;
  double p = 1.0;
  double r = 0.0;
  /// exp(-epsilon^(-alpha)): chance that no point exceeds epsilon on [0,1],
  /// the only event on which dropping the small points changes a path value
  /// above epsilon.
  double truncation_bound = 0.0;
};

/// Largest epsilon (to the ulp) with exp(-epsilon^(-alpha)) < 1e-40.
double default_epsilon(double alpha);

/// Count ~ Poisson(epsilon^(-alpha)); times uniform; magnitudes Pareto(alpha)
/// above epsilon; signs + with probability p. Each ingredient reads its own
/// sub-stream of `seed`. Throws DomainError on invalid parameters.
MarkedPointSet sample_poisson_points(double alpha, double p, double epsilon,
                                     std::uint64_t seed);

/// Running maxima of the positive-mark and of the negative-mark magnitudes,
/// each zero before its first point.
StepPair phi_split(const MarkedPointSet& pts);

struct LimitSpec {
  double alpha = 1.0;
  double p = 1.0;
  double r = 0.0;
  CoefficientModel coefficients = CoefficientModel::deterministic({1.0});
  double epsilon = 1.0;

  /// Validating constructor with r = 1 - p; epsilon <= 0 selects
  /// default_epsilon(alpha).
  static LimitSpec make(double alpha, double p, CoefficientModel model,
                        double epsilon = 0.0);
};

/// One path of M = C1 * W1 v C2 * W2 where (C1, C2) is drawn as (C+, C-) of a
/// coefficient realization and (W1, W2) = phi_split of a Poisson sample.
StepFunction sample_limit_path(const LimitSpec& spec, std::uint64_t seed);

struct CdfEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::string method;  // "exact" or "monte_carlo"
};

/// Draws of kappa = p C+^alpha + r C-^alpha, the scale of the conditional
/// exponent measure kappa * alpha * x^(-alpha-1) dx. Deterministic models
/// hold a single exact value.
class LimitMarginal {
 public:
  LimitMarginal(const LimitSpec& spec, std::size_t mc_draws, std::uint64_t seed);

  /// P(M(t) <= x) = E exp(-t kappa x^(-alpha)).
  /// Throws DomainError unless 0 <= t <= 1 and x > 0.
  CdfEstimate cdf(double t, double x) const;

  /// P(M(s) <= x, M(t) <= y) for 0 <= s <= t <= 1, x, y > 0.
  CdfEstimate bivariate_cdf(double s, double t, double x, double y) const;

  /// cdf(t, x) extended to the real line: 0 below zero, P(M(t) = 0) at zero.
  double operator()(double t, double x) const;

  bool exact() const noexcept { return exact_; }
  std::span<const double> kappas() const noexcept { return kappas_; }

 private:
  template <class F>
  CdfEstimate average(F&& conditional) const;

  double alpha_;
  bool exact_ = false;
  std::vector<double> kappas_;
};

CdfEstimate limit_marginal_cdf(const LimitSpec& spec, double t, double x,
                               std::size_t mc_draws, std::uint64_t seed);

CdfEstimate limit_bivariate_cdf(const LimitSpec& spec, double s, double t,
                                double x, double y, std::size_t mc_draws,
                                std::uint64_t seed);

}  // namespace linmax
