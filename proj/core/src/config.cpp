#include "linmax/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <toml.hpp>

#include "linmax/error.hpp"

namespace linmax {

namespace {

std::string where(std::string_view table, std::string_view key) {
  return std::string(table) + "." + std::string(key);
}

const toml::table* subtable(const toml::table& root, std::string_view name, bool required) {
  const auto* t = root[name].as_table();
  if (!t && required) throw ConfigError(std::string(name), "missing table");
  if (!t && root.contains(name)) throw ConfigError(std::string(name), "expected a table");
  return t;
}

double get_double(const toml::table* t, std::string_view table, std::string_view key,
                  std::optional<double> fallback = std::nullopt) {
  if (t) {
    if (const auto node = (*t)[key]; node) {
      if (const auto v = node.value<double>()) return *v;
      throw ConfigError(where(table, key), "expected a number");
    }
  }
  if (!fallback) throw ConfigError(where(table, key), "missing required key");
  return *fallback;
}

std::int64_t get_int(const toml::table* t, std::string_view table, std::string_view key,
                     std::optional<std::int64_t> fallback = std::nullopt) {
  if (t) {
    if (const auto node = (*t)[key]; node) {
      if (const auto v = node.value_exact<std::int64_t>()) return *v;
      throw ConfigError(where(table, key), "expected an integer");
    }
  }
  if (!fallback) throw ConfigError(where(table, key), "missing required key");
  return *fallback;
}

std::size_t get_count(const toml::table* t, std::string_view table, std::string_view key,
                      std::size_t fallback) {
  const auto v = get_int(t, table, key, static_cast<std::int64_t>(fallback));
  if (v < 0) throw ConfigError(where(table, key), "must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string get_string(const toml::table* t, std::string_view table, std::string_view key,
                       std::optional<std::string> fallback = std::nullopt) {
  if (t) {
    if (const auto node = (*t)[key]; node) {
      if (const auto v = node.value<std::string>()) return *v;
      throw ConfigError(where(table, key), "expected a string");
    }
  }
  if (!fallback) throw ConfigError(where(table, key), "missing required key");
  return *fallback;
}

template <class T>
std::vector<T> get_array(const toml::table* t, std::string_view table, std::string_view key,
                         std::vector<T> fallback) {
  if (!t || !t->contains(key)) return fallback;
  const auto* arr = (*t)[key].as_array();
  if (!arr) throw ConfigError(where(table, key), "expected an array");
  std::vector<T> out;
  for (const auto& node : *arr) {
    std::optional<T> v;
    if constexpr (std::is_floating_point_v<T>) {
      v = node.template value<T>();
    } else {
      const auto i = node.template value_exact<std::int64_t>();
      if (i && *i >= 0) v = static_cast<T>(*i);
    }
    if (!v) throw ConfigError(where(table, key), "array holds an invalid element");
    out.push_back(*v);
  }
  return out;
}

BoundedLaw get_law(const toml::table* model, std::string_view name) {
  const std::string table = "model." + std::string(name);
  const toml::table* t = model ? (*model)[name].as_table() : nullptr;
  if (model && model->contains(name) && !t) throw ConfigError(table, "expected a table");
  return {get_double(t, table, "lo", 1.0), get_double(t, table, "hi", 1.0)};
}

SignPattern get_signs(const toml::table* model) {
  const std::string s = get_string(model, "model", "signs", std::string("positive"));
  if (s == "positive") return SignPattern::Positive;
  if (s == "alternating") return SignPattern::Alternating;
  if (s == "random") return SignPattern::Random;
  throw ConfigError("model.signs", "expected positive, alternating or random");
}

CoefficientModel get_model(const toml::table* model) {
  const std::string kind = get_string(model, "model", "kind");
  try {
    if (kind == "deterministic") {
      return CoefficientModel::deterministic(get_array<double>(model, "model", "values", {}));
    }
    if (kind == "geometric") {
      return CoefficientModel::geometric(get_law(model, "amplitude"),
                                         get_double(model, "model", "rho"), get_signs(model));
    }
    if (kind == "power") {
      return CoefficientModel::power(get_law(model, "base"), get_double(model, "model", "beta"));
    }
  } catch (const DomainError& e) {
    throw ConfigError("model", e.what());
  }
  throw UnsupportedFamilyError("model.kind: unsupported coefficient family '" + kind +
                               "' (expected deterministic, geometric or power)");
}

/// Applies "a.b.c=value" to the document.
void apply_override(toml::table& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(assignment, "override must look like key=value");
  std::string path = assignment.substr(0, eq);
  path.erase(std::remove_if(path.begin(), path.end(), ::isspace), path.end());
  const std::string value = assignment.substr(eq + 1);

  toml::table parsed;
  try {
    parsed = toml::parse("v = " + value);
  } catch (const toml::parse_error& e) {
    throw ConfigError(path, std::string("override value is not valid TOML: ") +
                                std::string(e.description()));
  }

  toml::table* t = &root;
  std::size_t start = 0;
  for (auto dot = path.find('.'); dot != std::string::npos; dot = path.find('.', start)) {
    const std::string part = path.substr(start, dot - start);
    if (!t->contains(part)) t->insert(part, toml::table{});
    t = (*t)[part].as_table();
    if (!t) throw ConfigError(path, "override path crosses a non-table value");
    start = dot + 1;
  }
  t->insert_or_assign(path.substr(start), *parsed.get("v"));
}

}  // namespace

ExperimentConfig parse_config(std::string_view toml_text,
                              std::span<const std::string> overrides) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error: " << e.description() << " at line " << e.source().begin.line;
    throw ConfigError("", msg.str());
  }
  for (const auto& o : overrides) apply_override(root, o);

  ExperimentConfig cfg;
  const toml::table* law = subtable(root, "law", true);
  try {
    cfg.law = TailLaw::make(get_double(law, "law", "alpha"), get_double(law, "law", "p", 1.0),
                            get_double(law, "law", "scale", 1.0));
  } catch (const DomainError& e) {
    throw ConfigError("law", e.what());
  }

  cfg.model = get_model(subtable(root, "model", true));

  const toml::table* ex = subtable(root, "experiment", false);
  cfg.n_grid = get_array<std::size_t>(ex, "experiment", "n_grid", cfg.n_grid);
  cfg.replicates = get_count(ex, "experiment", "replicates", cfg.replicates);
  cfg.t_grid = get_array<double>(ex, "experiment", "t_grid", cfg.t_grid);
  cfg.delta = get_double(ex, "experiment", "delta", cfg.delta);
  cfg.epsilon = get_double(ex, "experiment", "epsilon", cfg.epsilon);
  cfg.q_grid = get_array<std::size_t>(ex, "experiment", "q_grid", cfg.q_grid);
  cfg.master_seed = static_cast<std::uint64_t>(
      get_int(ex, "experiment", "master_seed", static_cast<std::int64_t>(cfg.master_seed)));
  cfg.output = get_string(ex, "experiment", "output", cfg.output);
  cfg.workers = get_count(ex, "experiment", "workers", cfg.workers);
  cfg.mc_draws = get_count(ex, "experiment", "mc_draws", cfg.mc_draws);
  cfg.reference_tol = get_double(ex, "experiment", "reference_tol", cfg.reference_tol);
  cfg.max_order = get_count(ex, "experiment", "max_order", cfg.max_order);
  cfg.metric_tol = get_double(ex, "experiment", "metric_tol", cfg.metric_tol);
  const std::string initial = get_string(ex, "experiment", "initial", std::string("first_value"));
  if (initial == "first_value") {
    cfg.convention = InitialConvention::FirstValue;
  } else if (initial == "zero") {
    cfg.convention = InitialConvention::Zero;
  } else {
    throw ConfigError("experiment.initial", "expected first_value or zero");
  }

  const toml::table* th = subtable(root, "thresholds", false);
  cfg.thresholds.ks_max = get_double(th, "thresholds", "ks_max", cfg.thresholds.ks_max);
  cfg.thresholds.exceedance_max =
      get_double(th, "thresholds", "exceedance_max", cfg.thresholds.exceedance_max);
  cfg.thresholds.truncation_median_max =
      get_double(th, "thresholds", "truncation_median_max", cfg.thresholds.truncation_median_max);
  if (th && th->contains("require_trend")) {
    const auto v = (*th)["require_trend"].value<bool>();
    if (!v) throw ConfigError("thresholds.require_trend", "expected a boolean");
    cfg.thresholds.require_trend = *v;
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides);
}

void validate(const ExperimentConfig& c) {
  if (c.n_grid.empty()) throw ConfigError("experiment.n_grid", "must not be empty");
  for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
    if (c.n_grid[i] == 0) throw ConfigError("experiment.n_grid", "entries must be >= 1");
    if (i > 0 && c.n_grid[i] <= c.n_grid[i - 1]) {
      throw ConfigError("experiment.n_grid", "must be strictly ascending");
    }
  }
  if (c.replicates == 0) throw ConfigError("experiment.replicates", "must be >= 1");
  if (c.t_grid.empty()) throw ConfigError("experiment.t_grid", "must not be empty");
  for (double t : c.t_grid) {
    if (!(t > 0.0 && t <= 1.0)) throw ConfigError("experiment.t_grid", "times must lie in (0, 1]");
  }
  if (c.q_grid.empty()) throw ConfigError("experiment.q_grid", "must not be empty");
  for (std::size_t q : c.q_grid) {
    if (q < 2) throw ConfigError("experiment.q_grid", "orders must be >= 2");
  }
  if (!(c.delta > 0.0)) throw ConfigError("experiment.delta", "must be positive");
  if (!(c.epsilon > 0.0)) throw ConfigError("experiment.epsilon", "must be positive");
  if (c.mc_draws == 0) throw ConfigError("experiment.mc_draws", "must be >= 1");
  if (!(c.reference_tol > 0.0)) throw ConfigError("experiment.reference_tol", "must be positive");
  if (c.max_order == 0) throw ConfigError("experiment.max_order", "must be >= 1");
  if (!(c.metric_tol > 0.0)) throw ConfigError("experiment.metric_tol", "must be positive");
  if (c.output.empty()) throw ConfigError("experiment.output", "must not be empty");
}

std::string config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["law"] = {{"alpha", c.law.alpha}, {"p", c.law.p}, {"r", c.law.r}, {"scale", c.law.scale}};

  nlohmann::json m;
  m["kind"] = c.model.kind();
  std::visit(
      [&m](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Deterministic>) {
          m["values"] = f.values;
        } else if constexpr (std::is_same_v<T, GeometricRandom>) {
          m["amplitude"] = {{"lo", f.amplitude.lo}, {"hi", f.amplitude.hi}};
          m["rho"] = f.rho;
          m["signs"] = f.signs == SignPattern::Positive      ? "positive"
                       : f.signs == SignPattern::Alternating ? "alternating"
                                                             : "random";
        } else {
          m["base"] = {{"lo", f.base.lo}, {"hi", f.base.hi}};
          m["beta"] = f.beta;
        }
      },
      c.model.family());
  j["model"] = m;

  j["experiment"] = {
      {"n_grid", c.n_grid},
      {"replicates", c.replicates},
      {"t_grid", c.t_grid},
      {"delta", c.delta},
      {"epsilon", c.epsilon},
      {"q_grid", c.q_grid},
      {"master_seed", c.master_seed},
      {"output", c.output},
      {"workers", c.workers},
      {"mc_draws", c.mc_draws},
      {"reference_tol", c.reference_tol},
      {"max_order", c.max_order},
      {"metric_tol", c.metric_tol},
      {"initial", c.convention == InitialConvention::FirstValue ? "first_value" : "zero"},
  };
  j["thresholds"] = {
      {"ks_max", c.thresholds.ks_max},
      {"exceedance_max", c.thresholds.exceedance_max},
      {"truncation_median_max", c.thresholds.truncation_median_max},
      {"require_trend", c.thresholds.require_trend},
  };
  return j.dump();
}

}  // namespace linmax
