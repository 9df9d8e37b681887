#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linmax {

struct Jump {
  double t = 0.0;      // in (0, 1]
  double value = 0.0;  // value on [t, next jump)

  bool operator==(const Jump&) const = default;
};

/// Right-continuous piecewise-constant function on [0, 1].
///
/// The representation is normalized on construction: jumps that do not
/// change the value are dropped, so two step functions are equal as
/// functions iff they compare equal.
class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(double constant);
  /// Throws DomainError unless jump times are strictly increasing in (0, 1]
  /// and all values are finite.
  StepFunction(double initial, std::vector<Jump> jumps);

  double initial() const noexcept { return initial_; }
  std::span<const Jump> jumps() const noexcept { return jumps_; }
  std::size_t jump_count() const noexcept { return jumps_.size(); }

  struct Evaluation {
    double value;
    double left_limit;
  };

  /// (x(t), x(t-)) with x(0-) := x(0). Throws DomainError outside [0, 1].
  Evaluation evaluate(double t) const;
  double operator()(double t) const { return evaluate(t).value; }

  double final_value() const noexcept {
    return jumps_.empty() ? initial_ : jumps_.back().value;
  }

  /// Index of the first downward jump, if any.
  std::optional<std::size_t> first_decrease() const;
  bool is_nondecreasing() const { return !first_decrease().has_value(); }
  /// Throws MonotonicityError naming the first downward jump.
  void require_nondecreasing() const;

  /// t -> c * x(t).
  StepFunction scaled(double c) const;

  bool operator==(const StepFunction&) const = default;

 private:
  double initial_ = 0.0;
  std::vector<Jump> jumps_;
};

/// t -> sup_{s <= t} f(s).
StepFunction running_max(const StepFunction& f);

/// t -> f(t) v g(t).
StepFunction pointwise_max(const StepFunction& f, const StepFunction& g);

struct GraphPoint {
  double t = 0.0;
  double z = 0.0;

  bool operator==(const GraphPoint&) const = default;
};

/// Completed thin graph of a step function as an orthogonal polyline:
/// horizontal runs at constant value joined by vertical segments spanning
/// each jump from the left limit to the new value, in graph order.
struct CompletedGraph {
  std::vector<GraphPoint> vertices;
};

CompletedGraph completed_graph(const StepFunction& f);

/// JSON object {"initial": v, "jumps": [{"t": t, "value": v}, ...]}.
/// Numbers are written in shortest round-trip form.
std::string to_json(const StepFunction& f);
/// Throws DomainError on malformed input.
StepFunction step_function_from_json(std::string_view text);

/// CSV with header "t,value": the point (0, initial) then one row per jump.
void write_csv(std::ostream& out, const StepFunction& f);

}  // namespace linmax
