#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "linmax/error.hpp"
#include "linmax/harness.hpp"

namespace linmax {

namespace {

struct CsvWriter {
  std::ostream& out;
  const ConvergenceReport& rep;

  void row(std::size_t n, const std::string& t, const std::string& q, const char* statistic,
           double value, std::size_t sample_size) {
    out << rep.experiment << ',' << n << ',' << t << ',' << q << ',' << statistic << ','
        << value << ',' << sample_size << ',' << rep.master_seed << '\n';
  }
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return s.str();
}

}  // namespace

void write_report_csv(std::ostream& out, const ConvergenceReport& rep) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "experiment,n,t,q,statistic,value,sample_size,master_seed\n";
  CsvWriter w{out, rep};
  for (const auto& r : rep.marginal) {
    const std::string t = num(r.t);
    w.row(r.n, t, "", "ks_statistic", r.ks_statistic, r.sample_size);
    w.row(r.n, t, "", "p_value", r.p_value, r.sample_size);
  }
  for (const auto& r : rep.shrinkage) {
    w.row(r.n, "", "", "exceed_fraction", r.exceed_fraction, r.sample_size);
    w.row(r.n, "", "", "median", r.median, r.sample_size);
    w.row(r.n, "", "", "max", r.max, r.sample_size);
  }
  for (const auto& r : rep.truncation) {
    const std::string q = std::to_string(r.q);
    w.row(r.n, "", q, "exceed_fraction", r.exceed_fraction, r.sample_size);
    w.row(r.n, "", q, "median", r.median, r.sample_size);
    w.row(r.n, "", q, "max", r.max, r.sample_size);
    w.row(r.n, "", q, "max_bound", r.max_bound, r.sample_size);
    w.row(r.n, "", q, "bound_violations", static_cast<double>(r.bound_violations),
          r.sample_size);
  }
  out.precision(old_precision);
}

std::string report_to_json(const ConvergenceReport& rep) {
  using nlohmann::json;
  json j;
  j["experiment"] = rep.experiment;
  j["master_seed"] = rep.master_seed;
  j["coefficient_order"] = rep.coefficient_order;
  j["wall_clock_seconds"] = rep.wall_clock_seconds;
  j["passed"] = rep.all_checks_pass();

  json rows = json::array();
  for (const auto& r : rep.marginal) {
    rows.push_back({{"n", r.n}, {"t", r.t}, {"sample_size", r.sample_size},
                    {"ks_statistic", r.ks_statistic}, {"p_value", r.p_value},
                    {"approximate", r.approximate}, {"degenerate", r.degenerate}});
  }
  for (const auto& r : rep.shrinkage) {
    rows.push_back({{"n", r.n}, {"sample_size", r.sample_size}, {"delta", r.delta},
                    {"exceed_fraction", r.exceed_fraction}, {"median", r.median},
                    {"max", r.max}});
  }
  for (const auto& r : rep.truncation) {
    rows.push_back({{"n", r.n}, {"q", r.q}, {"sample_size", r.sample_size},
                    {"epsilon", r.epsilon}, {"exceed_fraction", r.exceed_fraction},
                    {"median", r.median}, {"max", r.max}, {"max_bound", r.max_bound},
                    {"bound_violations", r.bound_violations}});
  }
  j["rows"] = std::move(rows);

  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold},
                      {"passed", c.passed}, {"calibration", c.calibration}});
  }
  j["checks"] = std::move(checks);

  const auto& c = rep.conditions;
  json cond{{"alpha", c.alpha}, {"delta", c.delta}, {"ok", c.ok()},
            {"explanation", c.explanation},
            {"delta_moment", {{"required", c.requires_delta_moment}, {"passes", c.passes_delta_moment}}},
            {"gamma_moment", {{"required", c.requires_gamma_moment}, {"passes", c.passes_gamma_moment}}},
            {"absolute_sum", {{"required", c.requires_sum_abs}, {"passes", c.passes_sum_abs}}}};
  if (c.gamma) cond["gamma"] = *c.gamma;
  j["conditions"] = std::move(cond);
  if (!rep.config_json.empty()) j["config"] = json::parse(rep.config_json);
  return j.dump(2);
}

std::vector<std::filesystem::path> write_report_files(const ConvergenceReport& rep,
                                                      const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (rep.experiment + "_report.csv");
  const auto json_path = dir / (rep.experiment + "_report.json");
  std::ofstream csv(csv_path);
  std::ofstream js(json_path);
  if (!csv || !js) throw std::runtime_error("cannot write report under " + dir.string());
  write_report_csv(csv, rep);
  js << report_to_json(rep) << '\n';
  return {csv_path, json_path};
}

}  // namespace linmax
