#include "linmax/skorohod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "linmax/error.hpp"

namespace linmax {

namespace {

constexpr std::size_t kExactCandidateLimit = 256;

struct Box {
  double t_lo, t_hi, z_lo, z_hi;
};

double gap(double lo1, double hi1, double lo2, double hi2) {
  return std::max({0.0, lo2 - hi1, lo1 - hi2});
}

double point_box(double t, double z, const Box& b) {
  return std::max(gap(t, t, b.t_lo, b.t_hi), gap(z, z, b.z_lo, b.z_hi));
}

double box_box(const Box& a, const Box& b) {
  return std::max(gap(a.t_lo, a.t_hi, b.t_lo, b.t_hi), gap(a.z_lo, a.z_hi, b.z_lo, b.z_hi));
}

Box segment_box(const GraphPoint& p, const GraphPoint& q) {
  return {std::min(p.t, q.t), std::max(p.t, q.t), std::min(p.z, q.z), std::max(p.z, q.z)};
}

/// Segments of a completed graph, sorted by time (both ends nondecreasing).
class Target {
 public:
  explicit Target(const CompletedGraph& g) {
    const auto& v = g.vertices;
    if (v.size() == 1) {
      boxes_.push_back(segment_box(v[0], v[0]));
    }
    for (std::size_t k = 0; k + 1 < v.size(); ++k) boxes_.push_back(segment_box(v[k], v[k + 1]));
  }

  std::size_t size() const { return boxes_.size(); }
  const Box& operator[](std::size_t k) const { return boxes_[k]; }

  /// First segment whose time range reaches t.
  std::size_t lower(double t) const {
    const auto it = std::lower_bound(boxes_.begin(), boxes_.end(), t,
                                     [](const Box& b, double x) { return b.t_hi < x; });
    return static_cast<std::size_t>(it - boxes_.begin());
  }

  /// Distance from (t, z) to the polyline, scanning outward in time until
  /// the time gap alone exceeds the best distance found.
  double distance(double t, double z) const {
    const std::size_t n = boxes_.size();
    double best = std::numeric_limits<double>::infinity();
    const std::size_t k0 = std::min(lower(t), n - 1);
    for (std::size_t k = k0; k < n; ++k) {
      if (boxes_[k].t_lo - t >= best) break;
      best = std::min(best, point_box(t, z, boxes_[k]));
    }
    for (std::size_t k = k0; k-- > 0;) {
      if (t - boxes_[k].t_hi >= best) break;
      best = std::min(best, point_box(t, z, boxes_[k]));
    }
    return best;
  }

  /// Indices of segments within `radius` of box `b`.
  void near(const Box& b, double radius, std::vector<std::size_t>& out) const {
    out.clear();
    for (std::size_t k = lower(b.t_lo - radius); k < boxes_.size(); ++k) {
      if (boxes_[k].t_lo > b.t_hi + radius) break;
      if (box_box(b, boxes_[k]) <= radius) out.push_back(k);
    }
  }

 private:
  std::vector<Box> boxes_;
};

/// Piecewise-linear function on [0, 1] given by its breakpoints.
struct Piecewise {
  std::vector<double> x;
  std::vector<double> y;
};

/// Distance from the point p + s (q - p) to box b, as a function of s.
Piecewise segment_distance(const GraphPoint& p, const GraphPoint& q, const Box& b) {
  const bool moves_in_t = p.t != q.t;
  const double c0 = moves_in_t ? p.t : p.z;
  const double c1 = moves_in_t ? q.t : q.z;
  const double lo = moves_in_t ? b.t_lo : b.z_lo;
  const double hi = moves_in_t ? b.t_hi : b.z_hi;
  const double fixed = moves_in_t ? gap(p.z, p.z, b.z_lo, b.z_hi) : gap(p.t, p.t, b.t_lo, b.t_hi);

  const auto f = [&](double s) { return std::max(fixed, gap(c0 + s * (c1 - c0), c0 + s * (c1 - c0), lo, hi)); };

  Piecewise out;
  double knots[6] = {0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  std::size_t m = 2;
  if (c1 != c0) {
    for (double level : {lo, hi, lo - fixed, hi + fixed}) {
      const double s = (level - c0) / (c1 - c0);
      if (s > 0.0 && s < 1.0) knots[m++] = s;
    }
  }
  std::sort(knots, knots + m);
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && knots[i] == knots[i - 1]) continue;
    out.x.push_back(knots[i]);
    out.y.push_back(f(knots[i]));
  }
  return out;
}

Piecewise lower_envelope(const Piecewise& a, const Piecewise& b) {
  std::vector<double> xs;
  xs.reserve(a.x.size() + b.x.size());
  std::merge(a.x.begin(), a.x.end(), b.x.begin(), b.x.end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<double> ya(xs.size()), yb(xs.size());
  const auto sample = [&xs](const Piecewise& f, std::vector<double>& y) {
    std::size_t k = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      while (k + 2 < f.x.size() && f.x[k + 1] < xs[i]) ++k;
      const double x0 = f.x[k];
      const double x1 = f.x[k + 1];
      const double w = x1 > x0 ? (xs[i] - x0) / (x1 - x0) : 0.0;
      y[i] = f.y[k] + w * (f.y[k + 1] - f.y[k]);
    }
  };
  sample(a, ya);
  sample(b, yb);

  Piecewise out;
  out.x.reserve(2 * xs.size());
  out.y.reserve(2 * xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) {
      const double d0 = ya[i - 1] - yb[i - 1];
      const double d1 = ya[i] - yb[i];
      if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
        const double w = d0 / (d0 - d1);
        out.x.push_back(xs[i - 1] + w * (xs[i] - xs[i - 1]));
        out.y.push_back(ya[i - 1] + w * (ya[i] - ya[i - 1]));
      }
    }
    out.x.push_back(xs[i]);
    out.y.push_back(std::min(ya[i], yb[i]));
  }
  return out;
}

double exact_segment_sup(const GraphPoint& p, const GraphPoint& q, const Target& target,
                         const std::vector<std::size_t>& candidates) {
  Piecewise env = segment_distance(p, q, target[candidates.front()]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    env = lower_envelope(env, segment_distance(p, q, target[candidates[i]]));
  }
  return *std::max_element(env.y.begin(), env.y.end());
}

/// Certified sup of the distance along segment p -> q, never below `floor`
/// by more than tol unless the segment cannot reach it. Bisects until a piece
/// sees few enough target segments to be solved exactly; plain Lipschitz
/// bisection stalls on plateaus.
double adaptive_segment_sup(const GraphPoint& p, const GraphPoint& q, const Target& target,
                            double g0, double g1, double floor, double tol) {
  const double length = std::max(std::abs(q.t - p.t), std::abs(q.z - p.z));
  const auto point = [&](double s) {
    return GraphPoint{p.t + s * (q.t - p.t), p.z + s * (q.z - p.z)};
  };

  struct Interval {
    double a, b, ga, gb;
    double upper(double len) const { return 0.5 * (ga + gb + len * (b - a)); }
  };
  const auto cmp = [length](const Interval& u, const Interval& v) {
    return u.upper(length) < v.upper(length);
  };
  std::priority_queue<Interval, std::vector<Interval>, decltype(cmp)> queue(cmp);

  std::vector<std::size_t> candidates;
  double best = std::max(g0, g1);
  queue.push({0.0, 1.0, g0, g1});
  while (!queue.empty()) {
    const Interval iv = queue.top();
    queue.pop();
    const double upper = iv.upper(length);
    if (upper <= std::max(best, floor) + tol) break;
    const GraphPoint pa = point(iv.a);
    const GraphPoint pb = iv.b == 1.0 ? q : point(iv.b);
    target.near(segment_box(pa, pb), upper, candidates);
    if (!candidates.empty() && candidates.size() <= kExactCandidateLimit) {
      best = std::max(best, exact_segment_sup(pa, pb, target, candidates));
      continue;
    }
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b)) continue;
    const GraphPoint pm = point(mid);
    const double gm = target.distance(pm.t, pm.z);
    best = std::max(best, gm);
    queue.push({iv.a, mid, iv.ga, gm});
    queue.push({mid, iv.b, gm, iv.gb});
  }
  return best;
}

}  // namespace

double d_uniform(const StepFunction& f, const StepFunction& g) {
  double worst = std::abs(f.initial() - g.initial());
  const auto fj = f.jumps();
  const auto gj = g.jumps();
  double fv = f.initial();
  double gv = g.initial();
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < fj.size() || b < gj.size()) {
    const double ta = a < fj.size() ? fj[a].t : 2.0;
    const double tb = b < gj.size() ? gj[b].t : 2.0;
    const double t = std::min(ta, tb);
    if (ta == t) fv = fj[a++].value;
    if (tb == t) gv = gj[b++].value;
    worst = std::max(worst, std::abs(fv - gv));
  }
  return worst;
}

double directed_hausdorff(const CompletedGraph& from, const CompletedGraph& to, double tol,
                          HausdorffMethod method) {
  if (!(tol > 0.0)) throw DomainError("Hausdorff tolerance must be positive");
  if (from.vertices.empty() || to.vertices.empty()) {
    throw DomainError("completed graph has no vertices");
  }
  const Target target(to);
  const auto& v = from.vertices;

  std::vector<double> g(v.size());
  double best = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    g[k] = target.distance(v[k].t, v[k].z);
    best = std::max(best, g[k]);
  }

  std::vector<std::size_t> candidates;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const GraphPoint& p = v[k];
    const GraphPoint& q = v[k + 1];
    const double length = std::max(std::abs(q.t - p.t), std::abs(q.z - p.z));
    const double upper = 0.5 * (g[k] + g[k + 1] + length);
    if (upper <= best) continue;

    bool exact = method == HausdorffMethod::Exact;
    if (method == HausdorffMethod::Auto) {
      target.near(segment_box(p, q), upper, candidates);
      exact = !candidates.empty() && candidates.size() <= kExactCandidateLimit;
    } else if (exact) {
      target.near(segment_box(p, q), upper, candidates);
      if (candidates.empty()) exact = false;
    }

    const double sup = exact ? exact_segment_sup(p, q, target, candidates)
                             : adaptive_segment_sup(p, q, target, g[k], g[k + 1], best, tol);
    best = std::max(best, sup);
  }
  return best;
}

double d_m2(const StepFunction& f, const StepFunction& g, double tol, HausdorffMethod method) {
  if (!(tol > 0.0)) throw DomainError("Hausdorff tolerance must be positive");
  if (f == g) return 0.0;
  const CompletedGraph gf = completed_graph(f);
  const CompletedGraph gg = completed_graph(g);
  return std::max(directed_hausdorff(gf, gg, tol, method),
                  directed_hausdorff(gg, gf, tol, method));
}

double d_m1_monotone(const StepFunction& f, const StepFunction& g, double tol) {
  f.require_nondecreasing();
  g.require_nondecreasing();
  return d_m2(f, g, tol);
}

double oscillation(const StepFunction& f, double t, double rho) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("oscillation time outside [0, 1]");
  if (!(rho > 0.0)) throw DomainError("oscillation requires rho > 0");
  const double lo = std::max(0.0, t - rho);
  const double hi = std::min(1.0, t + rho);

  // Values of the pieces met on [lo, hi], in time order.
  std::vector<double> w{f.evaluate(lo).value};
  for (const Jump& j : f.jumps()) {
    if (j.t > lo && j.t <= hi) w.push_back(j.value);
  }
  const std::size_t m = w.size();
  if (m < 3) return 0.0;

  std::vector<double> pre_min(m), pre_max(m), suf_min(m), suf_max(m);
  pre_min[0] = pre_max[0] = w[0];
  for (std::size_t i = 1; i < m; ++i) {
    pre_min[i] = std::min(pre_min[i - 1], w[i]);
    pre_max[i] = std::max(pre_max[i - 1], w[i]);
  }
  suf_min[m - 1] = suf_max[m - 1] = w[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) {
    suf_min[i] = std::min(suf_min[i + 1], w[i]);
    suf_max[i] = std::max(suf_max[i + 1], w[i]);
  }

  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    // Above the interval: pick both endpoints as low as possible, and
    // symmetrically for below.
    const double above = w[j] - std::max(pre_min[j - 1], suf_min[j + 1]);
    const double below = std::min(pre_max[j - 1], suf_max[j + 1]) - w[j];
    worst = std::max({worst, above, below});
  }
  return worst;
}

double d_product(const StepPair& f, const StepPair& g, double tol) {
  return std::max(d_m1_monotone(f.first, g.first, tol), d_m1_monotone(f.second, g.second, tol));
}

}  // namespace linmax
