#include "linmax/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "linmax/error.hpp"

namespace linmax {

MonotonicityError::MonotonicityError(std::size_t jump_index, double time,
                                     double before, double after)
    : std::invalid_argument([&] {
        std::ostringstream msg;
        msg.precision(17);
        msg << "step function is not nondecreasing: jump " << jump_index
            << " at t=" << time << " goes from " << before << " down to "
            << after;
        return msg.str();
      }()),
      jump_index_(jump_index),
      time_(time) {}

StepFunction::StepFunction(double constant) : StepFunction(constant, {}) {}

StepFunction::StepFunction(double initial, std::vector<Jump> jumps)
    : initial_(initial) {
  if (!std::isfinite(initial)) throw DomainError("step function value is not finite");
  jumps_.reserve(jumps.size());
  double prev_t = 0.0;
  double prev_v = initial;
  for (const Jump& j : jumps) {
    if (!(j.t > prev_t) || j.t > 1.0) {
      throw DomainError("jump times must be strictly increasing in (0, 1]");
    }
    if (!std::isfinite(j.value)) throw DomainError("step function value is not finite");
    prev_t = j.t;
    if (j.value == prev_v) continue;
    jumps_.push_back(j);
    prev_v = j.value;
  }
}

StepFunction::Evaluation StepFunction::evaluate(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("evaluation time outside [0, 1]");
  // First jump strictly after t; the one before it (if any) is in force.
  const auto it = std::upper_bound(jumps_.begin(), jumps_.end(), t,
                                   [](double x, const Jump& j) { return x < j.t; });
  const std::size_t k = static_cast<std::size_t>(it - jumps_.begin());
  const double value = k == 0 ? initial_ : jumps_[k - 1].value;
  if (k > 0 && jumps_[k - 1].t == t) {
    const double left = k == 1 ? initial_ : jumps_[k - 2].value;
    return {value, left};
  }
  return {value, value};
}

std::optional<std::size_t> StepFunction::first_decrease() const {
  double prev = initial_;
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    if (jumps_[k].value < prev) return k;
    prev = jumps_[k].value;
  }
  return std::nullopt;
}

void StepFunction::require_nondecreasing() const {
  if (const auto k = first_decrease()) {
    const double before = *k == 0 ? initial_ : jumps_[*k - 1].value;
    throw MonotonicityError(*k, jumps_[*k].t, before, jumps_[*k].value);
  }
}

StepFunction StepFunction::scaled(double c) const {
  std::vector<Jump> js(jumps_.begin(), jumps_.end());
  for (auto& j : js) j.value *= c;
  return StepFunction(initial_ * c, std::move(js));
}

StepFunction running_max(const StepFunction& f) {
  std::vector<Jump> out;
  double best = f.initial();
  for (const Jump& j : f.jumps()) {
    if (j.value > best) {
      best = j.value;
      out.push_back(j);
    }
  }
  return StepFunction(f.initial(), std::move(out));
}

StepFunction pointwise_max(const StepFunction& f, const StepFunction& g) {
  const auto fj = f.jumps();
  const auto gj = g.jumps();
  std::vector<Jump> out;
  out.reserve(fj.size() + gj.size());

  double fv = f.initial();
  double gv = g.initial();
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < fj.size() || b < gj.size()) {
    double t;
    if (b == gj.size() || (a < fj.size() && fj[a].t < gj[b].t)) {
      t = fj[a].t;
      fv = fj[a++].value;
    } else if (a == fj.size() || gj[b].t < fj[a].t) {
      t = gj[b].t;
      gv = gj[b++].value;
    } else {
      t = fj[a].t;
      fv = fj[a++].value;
      gv = gj[b++].value;
    }
    out.push_back({t, std::max(fv, gv)});
  }
  return StepFunction(std::max(f.initial(), g.initial()), std::move(out));
}

CompletedGraph completed_graph(const StepFunction& f) {
  CompletedGraph g;
  auto& v = g.vertices;
  v.reserve(2 * f.jump_count() + 2);
  v.push_back({0.0, f.initial()});
  double current = f.initial();
  for (const Jump& j : f.jumps()) {
    if (v.back().t != j.t) v.push_back({j.t, current});
    v.push_back({j.t, j.value});
    current = j.value;
  }
  if (v.back().t != 1.0) v.push_back({1.0, current});
  return g;
}

std::string to_json(const StepFunction& f) {
  nlohmann::json j;
  j["initial"] = f.initial();
  auto& jumps = j["jumps"] = nlohmann::json::array();
  for (const Jump& jp : f.jumps()) jumps.push_back({{"t", jp.t}, {"value", jp.value}});
  return j.dump();
}

StepFunction step_function_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<Jump> jumps;
    for (const auto& e : j.at("jumps")) {
      jumps.push_back({e.at("t").get<double>(), e.at("value").get<double>()});
    }
    return StepFunction(j.at("initial").get<double>(), std::move(jumps));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed step function JSON: ") + e.what());
  }
}

void write_csv(std::ostream& out, const StepFunction& f) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "t,value\n0," << f.initial() << '\n';
  for (const Jump& j : f.jumps()) buf << j.t << ',' << j.value << '\n';
  out << buf.str();
}

}  // namespace linmax
