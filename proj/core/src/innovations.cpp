#include "linmax/innovations.hpp"

#include <cmath>

#include "linmax/error.hpp"
#include "linmax/rng.hpp"

namespace linmax {

TailLaw TailLaw::make(double alpha, double p, double scale) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainError("tail index alpha must be positive and finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("tail balance p must lie in [0, 1]");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("scale must be positive and finite");
  }
  return TailLaw{alpha, p, 1.0 - p, scale};
}

double tail_prob(const TailLaw& law, double x) {
  if (!(x > 0.0)) throw DomainError("tail_prob requires x > 0");
  if (x < law.scale) return 1.0;
  return std::pow(x / law.scale, -law.alpha);
}

double norming_constant(const TailLaw& law, std::uint64_t n) {
  if (n == 0) throw DomainError("norming_constant requires n >= 1");
  return law.scale * std::pow(static_cast<double>(n), 1.0 / law.alpha);
}

std::vector<double> sample_innovations(const TailLaw& law, std::size_t count,
                                       std::uint64_t seed) {
  Engine magnitude = make_engine(seed, Stream::InnovationMagnitude);
  Engine sign = make_engine(seed, Stream::InnovationSign);
  const double inv_alpha = -1.0 / law.alpha;

  std::vector<double> out(count);
  for (auto& z : out) {
    const double m = law.scale * std::pow(open_unit(magnitude), inv_alpha);
    z = open_unit(sign) < law.p ? m : -m;
  }
  return out;
}

}  // namespace linmax
