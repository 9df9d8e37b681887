#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace linmax {

/// Uniform law on [lo, hi]; lo == hi is a point mass.
struct BoundedLaw {
  double lo = 1.0;
  double hi = 1.0;

  double bound() const;  // max(|lo|, |hi|)
};

enum class SignPattern {
  Positive,     // s_j = +1
  Alternating,  // s_j = (-1)^j
  Random,       // i.i.d. fair signs
};

/// C_j = values[j] for j < values.size() and 0 afterwards.
struct Deterministic {
  std::vector<double> values;
};

/// C_j = A * s_j * rho^j with one amplitude A drawn per realization.
struct GeometricRandom {
  BoundedLaw amplitude;
  double rho = 0.5;
  SignPattern signs = SignPattern::Positive;
};

/// C_j = B_j * (j + 1)^(-beta) with B_j i.i.d. from `base`.
struct PowerDecay {
  BoundedLaw base;
  double beta = 2.0;
};

/// Law of the coefficient sequence (C_j), independent of the innovations.
class CoefficientModel {
 public:
  using Family = std::variant<Deterministic, GeometricRandom, PowerDecay>;

  /// Throws DomainError on empty or non-finite values.
  static CoefficientModel deterministic(std::vector<double> values);
  /// Throws DomainError unless |rho| < 1 and lo <= hi are finite.
  static CoefficientModel geometric(BoundedLaw amplitude, double rho,
                                    SignPattern signs = SignPattern::Positive);
  /// Throws DomainError unless beta > 0 and lo <= hi are finite.
  static CoefficientModel power(BoundedLaw base, double beta);

  const Family& family() const noexcept { return family_; }
  bool is_deterministic() const noexcept {
    return std::holds_alternative<Deterministic>(family_);
  }
  std::string kind() const;  // "deterministic", "geometric" or "power"

 private:
  explicit CoefficientModel(Family f) : family_(std::move(f)) {}
  Family family_;
};

/// Realized head c_0..c_J plus certified bounds on the unrealized tail.
struct CoefficientRealization {
  std::vector<double> head;
  double tail_sup_bound = 0.0;  // sup_{j>J} |C_j| <= tail_sup_bound
  double tail_sum_bound = 0.0;  // sum_{j>J} |C_j| <= tail_sum_bound
  bool tail_may_be_positive = false;
  bool tail_may_be_negative = false;
  bool approximate = false;  // set by operations that had to use a bound

  std::size_t order() const { return head.empty() ? 0 : head.size() - 1; }
};

/// Prefix of the coefficient sequence up to lag `order`. Lag j depends only
/// on (model, seed, j), so realizations of different orders share a prefix.
CoefficientRealization sample_coefficients(const CoefficientModel& model,
                                           std::size_t order,
                                           std::uint64_t seed);

struct CPlusMinus {
  double plus = 0.0;
  double minus = 0.0;
  bool plus_is_upper_bound = false;
  bool minus_is_upper_bound = false;

  bool exact() const { return !plus_is_upper_bound && !minus_is_upper_bound; }
};

/// C+ = max_j (C_j v 0) and C- = max_j (-C_j v 0). The unrealized tail only
/// enters a side whose sign it can take, and only when its sup bound exceeds
/// the head maximum; the side is then reported as an upper bound.
CPlusMinus c_plus_minus(const CoefficientRealization& real);

/// Draws (C+, C-) for one realization of the full sequence, extending the
/// realized head until the tail can no longer change the result (or a cap on
/// the order is reached, in which case the bound is flagged).
CPlusMinus sample_c_plus_minus(const CoefficientModel& model,
                               std::uint64_t seed);

enum class MomentCondition {
  DeltaMoment,  // sum_j E|C_j|^delta < inf for some delta in (0, alpha)
  GammaMoment,  // sum_j E|C_j|^gamma < inf for some gamma in (alpha, 1)
  AbsoluteSum,  // sum_j E|C_j| < inf
};

std::string condition_name(MomentCondition c);

struct ConditionReport {
  double alpha = 0.0;
  double delta = 0.0;
  std::optional<double> gamma;  // only when alpha < 1
  bool passes_delta_moment = false;
  bool passes_gamma_moment = false;
  bool passes_sum_abs = false;
  bool requires_delta_moment = false;
  bool requires_gamma_moment = false;
  bool requires_sum_abs = false;
  std::string explanation;

  /// All conditions required at this alpha hold.
  bool ok() const;
  /// First required condition that fails, if any.
  std::optional<MomentCondition> first_failure() const;
};

/// Closed-form check of the summability conditions that make the partial
/// maxima of the linear process converge. Required set: delta- and
/// gamma-moments for alpha < 1, the delta-moment for alpha = 1, absolute
/// summability for alpha > 1. Witnesses: delta = min(alpha/2, 1),
/// gamma = (alpha + 1)/2.
ConditionReport check_moment_conditions(const CoefficientModel& model,
                                        double alpha);

/// Smallest q with sum_{j>q} sup|C_j| <= tol from the family's closed-form
/// tail bound. Deterministic models return their exact order
/// (values.size() - 1). Throws ConditionError for non-summable tails.
std::size_t truncation_order(const CoefficientModel& model, double tol);

}  // namespace linmax
