#include "linmax/linear_process.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "linmax/error.hpp"
#include "linmax/rng.hpp"

namespace linmax {

std::vector<double> moving_average(std::span<const double> coeffs,
                                   std::span<const double> z) {
  if (coeffs.empty()) throw DomainError("moving_average needs at least one coefficient");
  const std::size_t J = coeffs.size() - 1;
  if (z.size() <= J) throw DomainError("moving_average needs more than J innovations");
  const std::size_t n = z.size() - J;

  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    // X_{i+1} uses z[i + J - j] for lag j.
    const double* zi = z.data() + i + J;
    double acc = 0.0;
    for (std::size_t j = 0; j <= J; ++j) acc += coeffs[j] * zi[-static_cast<std::ptrdiff_t>(j)];
    x[i] = acc;
  }
  return x;
}

SimulatedPath simulate_path(const TailLaw& law, const CoefficientRealization& real,
                            std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DomainError("simulate_path requires n >= 1");
  if (real.head.empty()) throw DomainError("coefficient realization is empty");

  SimulatedPath path;
  path.n = n;
  path.order = real.order();
  path.a_n = norming_constant(law, n);
  path.seed = seed;

  const std::size_t J = path.order;
  const auto draws = sample_innovations(law, n + J, derive_seed(seed, Stream::Innovations));
  // draws = Z_1..Z_n, Z_0, Z_{-1}, ..., Z_{1-J}; store in time order.
  path.z.resize(n + J);
  for (std::size_t k = 0; k < J; ++k) path.z[J - 1 - k] = draws[n + k];
  std::copy_n(draws.begin(), n, path.z.begin() + static_cast<std::ptrdiff_t>(J));

  path.x = moving_average(real.head, path.z);

  double zmax = 0.0;
  for (double v : path.z) zmax = std::max(zmax, std::abs(v));
  path.neglected_tail_bound = real.tail_sum_bound * zmax;
  return path;
}

CoefficientRealization finite_order_approx(const CoefficientRealization& real,
                                           std::size_t q) {
  if (q < 2) throw DomainError("finite_order_approx requires q >= 2");

  CoefficientRealization out;
  out.head.assign(q + 1, 0.0);
  for (std::size_t j = 0; j + 2 <= q && j < real.head.size(); ++j) out.head[j] = real.head[j];

  // Lags >= q-1 include the sequence's zero limit (or trailing zeros).
  double cmax = 0.0;
  double cmin = 0.0;
  for (std::size_t j = q - 1; j < real.head.size(); ++j) {
    cmax = std::max(cmax, real.head[j]);
    cmin = std::min(cmin, real.head[j]);
  }
  if (real.tail_may_be_positive && real.tail_sup_bound > cmax) {
    cmax = real.tail_sup_bound;
    out.approximate = true;
  }
  if (real.tail_may_be_negative && -real.tail_sup_bound < cmin) {
    cmin = -real.tail_sup_bound;
    out.approximate = true;
  }
  out.head[q - 1] = cmax;
  out.head[q] = cmin;
  out.approximate = out.approximate || real.approximate;
  return out;
}

StepFunction partial_maxima(std::span<const double> x, double a_n,
                            InitialConvention convention) {
  if (x.empty()) throw DomainError("partial_maxima needs at least one value");
  if (!(a_n > 0.0)) throw DomainError("partial_maxima requires a_n > 0");

  const std::size_t n = x.size();
  const double dn = static_cast<double>(n);
  const double first = x[0] / a_n;
  const double initial = convention == InitialConvention::FirstValue ? first : 0.0;

  std::vector<Jump> jumps;
  double best = first;
  if (convention == InitialConvention::Zero) jumps.push_back({1.0 / dn, first});
  for (std::size_t i = 1; i < n; ++i) {
    const double v = x[i] / a_n;
    if (v > best) {
      best = v;
      jumps.push_back({static_cast<double>(i + 1) / dn, v});
    }
  }
  return StepFunction(initial, std::move(jumps));
}

StepFunction partial_maxima(const SimulatedPath& path, InitialConvention convention) {
  return partial_maxima(path.x, path.a_n, convention);
}

StepFunction wn_process(std::span<const double> z, double a_n, double c_plus,
                        double c_minus) {
  if (!(a_n > 0.0)) throw DomainError("wn_process requires a_n > 0");
  const double dn = static_cast<double>(z.size());
  std::vector<Jump> jumps;
  double best = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    const double weight = zi > 0.0 ? c_plus : (zi < 0.0 ? c_minus : 0.0);
    const double v = std::abs(zi) / a_n * weight;
    if (v > best) {
      best = v;
      jumps.push_back({static_cast<double>(i + 1) / dn, v});
    }
  }
  return StepFunction(0.0, std::move(jumps));
}

double coupling_bound(const SimulatedPath& path, std::span<const double> a,
                      std::span<const double> b) {
  const std::size_t len = std::max(a.size(), b.size());
  if (len > path.order + 1) {
    throw DomainError("coupling_bound: coefficient heads exceed the path's order");
  }
  std::vector<double> diff(len, 0.0);
  for (std::size_t j = 0; j < len; ++j) {
    const double aj = j < a.size() ? a[j] : 0.0;
    const double bj = j < b.size() ? b[j] : 0.0;
    diff[j] = std::abs(aj - bj);
  }
  double worst = 0.0;
  for (std::size_t i = 1; i <= path.n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      if (diff[j] != 0.0) {
        acc += diff[j] * std::abs(path.innovation(static_cast<std::ptrdiff_t>(i) -
                                                  static_cast<std::ptrdiff_t>(j)));
      }
    }
    worst = std::max(worst, acc);
  }
  return worst / path.a_n;
}

void write_path_csv(std::ostream& out, const SimulatedPath& path) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "i,x\n";
  for (std::size_t i = 0; i < path.x.size(); ++i) buf << (i + 1) << ',' << path.x[i] << '\n';
  out << buf.str();
}

}  // namespace linmax
