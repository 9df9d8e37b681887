#pragma once

#include <cstdint>
#include <vector>

namespace linmax {

/// Law of the i.i.d. innovations: a two-sided Pareto distribution.
///
/// |Z| has tail Pr(|Z| > x) = (x / scale)^(-alpha) for x >= scale and 1
/// below it; the sign is + with probability p and - with probability r,
/// independently of the magnitude. The slowly varying factor is the
/// constant 1 beyond `scale`.
struct TailLaw {
  double alpha = 1.0;
  double p = 1.0;
  double r = 0.0;
  double scale = 1.0;

  /// Validating constructor; r is derived as 1 - p.
  /// Throws DomainError unless alpha > 0, 0 <= p <= 1 and scale > 0.
  static TailLaw make(double alpha, double p, double scale = 1.0);
};

/// Pr(|Z| > x). Throws DomainError for x <= 0.
double tail_prob(const TailLaw& law, double x);

/// a_n solving n * tail_prob(law, a_n) = 1, i.e. scale * n^(1/alpha).
double norming_constant(const TailLaw& law, std::uint64_t n);

/// `count` i.i.d. innovations. Magnitudes come from inverse-CDF sampling on
/// one sub-stream of `seed` and signs from another, so the k-th draw depends
/// only on (law, seed, k): a longer request extends a shorter one.
std::vector<double> sample_innovations(const TailLaw& law, std::size_t count,
                                       std::uint64_t seed);

}  // namespace linmax
