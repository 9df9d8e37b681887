#include "linmax/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "linmax/error.hpp"
#include "linmax/rng.hpp"

namespace linmax {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void validate_law(const BoundedLaw& law, const char* what) {
  if (!std::isfinite(law.lo) || !std::isfinite(law.hi) || law.lo > law.hi) {
    throw DomainError(std::string(what) + " law needs finite lo <= hi");
  }
}

double draw(const BoundedLaw& law, Engine& engine) {
  const double u = open_unit(engine);
  if (law.lo == law.hi) return law.lo;
  return law.lo + (law.hi - law.lo) * u;
}

constexpr std::size_t kMaxCPlusMinusOrder = std::size_t{1} << 20;

}  // namespace

double BoundedLaw::bound() const { return std::max(std::abs(lo), std::abs(hi)); }

CoefficientModel CoefficientModel::deterministic(std::vector<double> values) {
  if (values.empty()) throw DomainError("deterministic coefficients are empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("coefficient is not finite");
  }
  return CoefficientModel(Deterministic{std::move(values)});
}

CoefficientModel CoefficientModel::geometric(BoundedLaw amplitude, double rho,
                                             SignPattern signs) {
  validate_law(amplitude, "amplitude");
  if (!(std::abs(rho) < 1.0)) throw DomainError("geometric ratio needs |rho| < 1");
  return CoefficientModel(GeometricRandom{amplitude, rho, signs});
}

CoefficientModel CoefficientModel::power(BoundedLaw base, double beta) {
  validate_law(base, "base");
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("power decay exponent beta must be positive");
  }
  return CoefficientModel(PowerDecay{base, beta});
}

std::string CoefficientModel::kind() const {
  return std::visit(overloaded{
                        [](const Deterministic&) { return "deterministic"; },
                        [](const GeometricRandom&) { return "geometric"; },
                        [](const PowerDecay&) { return "power"; },
                    },
                    family_);
}

CoefficientRealization sample_coefficients(const CoefficientModel& model,
                                           std::size_t order,
                                           std::uint64_t seed) {
  CoefficientRealization out;
  out.head.resize(order + 1, 0.0);
  const double J = static_cast<double>(order);

  std::visit(
      overloaded{
          [&](const Deterministic& m) {
            for (std::size_t j = 0; j < m.values.size(); ++j) {
              const double c = m.values[j];
              if (j <= order) {
                out.head[j] = c;
                continue;
              }
              out.tail_sup_bound = std::max(out.tail_sup_bound, std::abs(c));
              out.tail_sum_bound += std::abs(c);
              out.tail_may_be_positive |= c > 0.0;
              out.tail_may_be_negative |= c < 0.0;
            }
          },
          [&](const GeometricRandom& m) {
            Engine amp = make_engine(seed, Stream::CoefficientAmplitude);
            Engine sgn = make_engine(seed, Stream::CoefficientSign);
            const double a = draw(m.amplitude, amp);
            double power = 1.0;
            for (std::size_t j = 0; j <= order; ++j) {
              double s = 1.0;
              switch (m.signs) {
                case SignPattern::Positive: break;
                case SignPattern::Alternating: s = (j % 2 == 0) ? 1.0 : -1.0; break;
                case SignPattern::Random: s = open_unit(sgn) < 0.5 ? 1.0 : -1.0; break;
              }
              out.head[j] = a * s * power;
              power *= m.rho;
            }
            const double r = std::abs(m.rho);
            out.tail_sup_bound = std::abs(a) * std::pow(r, J + 1.0);
            out.tail_sum_bound = out.tail_sup_bound / (1.0 - r);
            if (a != 0.0 && m.rho != 0.0) {
              // Sign of A * s_j * rho^j over j > J.
              const bool fixed_sign =
                  (m.signs == SignPattern::Positive && m.rho > 0.0) ||
                  (m.signs == SignPattern::Alternating && m.rho < 0.0);
              out.tail_may_be_positive = !fixed_sign || a > 0.0;
              out.tail_may_be_negative = !fixed_sign || a < 0.0;
            }
          },
          [&](const PowerDecay& m) {
            Engine base = make_engine(seed, Stream::CoefficientAmplitude);
            for (std::size_t j = 0; j <= order; ++j) {
              out.head[j] =
                  draw(m.base, base) * std::pow(static_cast<double>(j) + 1.0, -m.beta);
            }
            const double M = m.base.bound();
            out.tail_sup_bound = M * std::pow(J + 2.0, -m.beta);
            if (M == 0.0) {
              out.tail_sum_bound = 0.0;
            } else if (m.beta > 1.0) {
              out.tail_sum_bound = M * std::pow(J + 1.0, 1.0 - m.beta) / (m.beta - 1.0);
            } else {
              out.tail_sum_bound = std::numeric_limits<double>::infinity();
            }
            out.tail_may_be_positive = m.base.hi > 0.0;
            out.tail_may_be_negative = m.base.lo < 0.0;
          },
      },
      model.family());
  return out;
}

CPlusMinus c_plus_minus(const CoefficientRealization& real) {
  CPlusMinus out;
  for (double c : real.head) {
    out.plus = std::max(out.plus, c);
    out.minus = std::max(out.minus, -c);
  }
  if (real.tail_may_be_positive && real.tail_sup_bound > out.plus) {
    out.plus = real.tail_sup_bound;
    out.plus_is_upper_bound = true;
  }
  if (real.tail_may_be_negative && real.tail_sup_bound > out.minus) {
    out.minus = real.tail_sup_bound;
    out.minus_is_upper_bound = true;
  }
  return out;
}

CPlusMinus sample_c_plus_minus(const CoefficientModel& model, std::uint64_t seed) {
  if (const auto* d = std::get_if<Deterministic>(&model.family())) {
    return c_plus_minus(sample_coefficients(model, d->values.size() - 1, seed));
  }
  std::size_t order = 63;
  for (;;) {
    const CPlusMinus cpm = c_plus_minus(sample_coefficients(model, order, seed));
    if (cpm.exact() || order >= kMaxCPlusMinusOrder) return cpm;
    order = 2 * order + 1;
  }
}

std::string condition_name(MomentCondition c) {
  switch (c) {
    case MomentCondition::DeltaMoment:
      return "delta-moment summability (sum E|C_j|^delta < inf, delta in (0, alpha))";
    case MomentCondition::GammaMoment:
      return "gamma-moment summability (sum E|C_j|^gamma < inf, gamma in (alpha, 1))";
    case MomentCondition::AbsoluteSum:
      return "absolute summability (sum E|C_j| < inf)";
  }
  return "unknown condition";
}

bool ConditionReport::ok() const { return !first_failure().has_value(); }

std::optional<MomentCondition> ConditionReport::first_failure() const {
  if (requires_delta_moment && !passes_delta_moment) return MomentCondition::DeltaMoment;
  if (requires_gamma_moment && !passes_gamma_moment) return MomentCondition::GammaMoment;
  if (requires_sum_abs && !passes_sum_abs) return MomentCondition::AbsoluteSum;
  return std::nullopt;
}

ConditionReport check_moment_conditions(const CoefficientModel& model, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("check_moment_conditions requires alpha > 0");

  ConditionReport rep;
  rep.alpha = alpha;
  rep.delta = std::min(alpha / 2.0, 1.0);
  if (alpha < 1.0) rep.gamma = (alpha + 1.0) / 2.0;
  rep.requires_delta_moment = alpha <= 1.0;
  rep.requires_gamma_moment = alpha < 1.0;
  rep.requires_sum_abs = alpha > 1.0;

  // Whether sum_j E|C_j|^s converges, in closed form per family.
  const auto summable = [&](double s) -> bool {
    return std::visit(
        overloaded{
            [](const Deterministic&) { return true; },
            [](const GeometricRandom&) { return true; },
            [s](const PowerDecay& m) { return m.base.bound() == 0.0 || m.beta * s > 1.0; },
        },
        model.family());
  };

  rep.passes_delta_moment = summable(rep.delta);
  rep.passes_gamma_moment = rep.gamma ? summable(*rep.gamma) : true;
  rep.passes_sum_abs = summable(1.0);

  std::ostringstream why;
  why << model.kind() << " model, alpha=" << alpha << ": delta=" << rep.delta
      << (rep.passes_delta_moment ? " passes" : " fails");
  if (rep.gamma) {
    why << "; gamma=" << *rep.gamma << (rep.passes_gamma_moment ? " passes" : " fails");
  }
  why << "; absolute sum " << (rep.passes_sum_abs ? "passes" : "fails");
  if (const auto f = rep.first_failure()) {
    why << "; required condition failed: " << condition_name(*f);
  }
  rep.explanation = why.str();
  return rep;
}

std::size_t truncation_order(const CoefficientModel& model, double tol) {
  if (!(tol > 0.0)) throw DomainError("truncation_order requires tol > 0");

  const auto search = [](auto bound, double tol, double guess) -> std::size_t {
    if (!std::isfinite(guess) || guess > 1e15) {
      throw DomainError("truncation order exceeds representable range");
    }
    auto q = static_cast<std::size_t>(std::max(0.0, guess));
    while (bound(q) > tol) ++q;
    while (q > 0 && bound(q - 1) <= tol) --q;
    return q;
  };

  return std::visit(
      overloaded{
          [](const Deterministic& m) -> std::size_t { return m.values.size() - 1; },
          [&](const GeometricRandom& m) -> std::size_t {
            const double M = m.amplitude.bound();
            const double r = std::abs(m.rho);
            if (M == 0.0 || r == 0.0) return 0;
            const auto bound = [&](std::size_t q) {
              return M * std::pow(r, static_cast<double>(q) + 1.0) / (1.0 - r);
            };
            const double guess = std::log(tol * (1.0 - r) / M) / std::log(r) - 1.0;
            return search(bound, tol, std::floor(guess));
          },
          [&](const PowerDecay& m) -> std::size_t {
            const double M = m.base.bound();
            if (M == 0.0) return 0;
            if (m.beta <= 1.0) {
              throw ConditionError(condition_name(MomentCondition::AbsoluteSum),
                                   "power decay with beta <= 1 has a non-summable tail");
            }
            const auto bound = [&](std::size_t q) {
              return M * std::pow(static_cast<double>(q) + 1.0, 1.0 - m.beta) /
                     (m.beta - 1.0);
            };
            const double guess =
                std::pow(M / ((m.beta - 1.0) * tol), 1.0 / (m.beta - 1.0)) - 1.0;
            return search(bound, tol, std::floor(guess));
          },
      },
      model.family());
}

}  // namespace linmax
