#pragma once

#include <utility>

#include "linmax/step_function.hpp"

namespace linmax {

inline constexpr double kDefaultMetricTol = 1e-9;

/// sup_t |f(t) - g(t)|, exact over the merged jump partition.
double d_uniform(const StepFunction& f, const StepFunction& g);

enum class HausdorffMethod {
  Auto,      // exact envelope, adaptive fallback on crowded segments
  Exact,     // exact envelope everywhere
  Adaptive,  // certified bisection everywhere
};

/// sup_{a in A} inf_{b in B} |a - b|_inf between two completed graphs.
///
/// Along a segment of A the distance to B is the lower envelope of convex
/// piecewise-linear functions, so its supremum sits at a breakpoint of the
/// envelope; the exact method builds the envelope from the segments of B that
/// can matter. The adaptive method bisects using the fact that the distance
/// is 1-Lipschitz in arc length and stops once the remaining intervals cannot
/// exceed the best value found by more than `tol`.
double directed_hausdorff(const CompletedGraph& from, const CompletedGraph& to,
                          double tol = kDefaultMetricTol,
                          HausdorffMethod method = HausdorffMethod::Auto);

/// Skorohod M2 distance: two-sided Hausdorff distance between completed
/// graphs under the plane metric |t1 - t2| v |z1 - z2|. Certified to +-tol.
double d_m2(const StepFunction& f, const StepFunction& g,
            double tol = kDefaultMetricTol,
            HausdorffMethod method = HausdorffMethod::Auto);

/// d*_M1 for nondecreasing f, g. The oscillation term of d*_M1 vanishes on
/// monotone functions, so this equals d_m2. It is the metric topologically
/// equivalent to M1, not the infimum over parametric representations.
/// Throws MonotonicityError if either argument has a downward jump.
double d_m1_monotone(const StepFunction& f, const StepFunction& g,
                     double tol = kDefaultMetricTol);

/// sup over 0 v (t - rho) <= t1 < t2 < t3 <= (t + rho) ^ 1 of the distance
/// from f(t2) to the interval between f(t1) and f(t3).
/// Throws DomainError unless 0 <= t <= 1 and rho > 0.
double oscillation(const StepFunction& f, double t, double rho);

using StepPair = std::pair<StepFunction, StepFunction>;

/// Product metric: max of the componentwise d_m1_monotone distances.
double d_product(const StepPair& f, const StepPair& g,
                 double tol = kDefaultMetricTol);

}  // namespace linmax
