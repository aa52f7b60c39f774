#include "fgt/report.hpp"

#include <json.hpp>

#include "fgt/errors.hpp"
#include "fgt/json_writer.hpp"

namespace fgt {

namespace {

void write_config(JsonWriter& w, const SimulationConfig& cfg)
{
  w.begin_object();
  w.key("distribution");
  w.begin_object();
  w.kv("name", cfg.distribution.name);
  if (cfg.distribution.name == "pareto") {
    w.kv("x0", cfg.distribution.x0);
    w.kv("beta", cfg.distribution.beta);
    w.kv("upper", cfg.distribution.upper);
  }
  w.end_object();
  w.kv("n", cfg.n);
  w.kv("replications", cfg.replications);
  w.kv("base_seed", cfg.base_seed);
  w.key("z_grid");
  w.begin_array();
  for (double z : cfg.z_grid)
    w.value(z);
  w.end_array();
  w.key("alpha_grid");
  w.begin_array();
  for (double a : cfg.alpha_grid)
    w.value(a);
  w.end_array();
  w.key("estimators");
  w.begin_array();
  for (EstimatorId id : cfg.estimators)
    w.value(to_string(id));
  w.end_array();
  w.key("bandwidth_rule");
  w.begin_object();
  w.kv("name", cfg.bandwidth_rule.name());
  if (cfg.bandwidth_rule.kind == BandwidthRuleKind::fixed)
    w.kv("h", cfg.bandwidth_rule.fixed_h);
  w.end_object();
  w.kv("adaptive_sensitivity", cfg.adaptive_sensitivity);
  w.kv("kernel", cfg.kernel_name);
  w.end_object();
}

} // namespace

std::string to_json(const SimulationReport& report, bool include_timing)
{
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "fgt-simulation-report/1");
  w.key("config");
  write_config(w, report.config);
  w.key("generator");
  w.begin_object();
  w.kv("algorithm", report.generator_algorithm);
  w.kv("seed_derivation", report.seed_derivation);
  w.end_object();
  w.kv("bandwidth", report.config.bandwidth_rule.resolve(report.config.n));
  w.key("notes");
  w.begin_array();
  for (const auto& note : report.notes)
    w.value(note);
  w.end_array();
  w.key("cells");
  w.begin_array();
  for (const auto& cell : report.cells) {
    w.begin_object();
    w.kv("z", cell.z);
    w.kv("alpha", cell.alpha);
    w.kv("estimator", to_string(cell.estimator));
    w.kv("true_value", cell.true_value);
    if (cell.failed) {
      w.kv("failed", true);
      w.kv("error", cell.error);
    } else {
      w.kv("mean", cell.mean);
      w.kv("mse", cell.mse);
      w.kv("variance", cell.variance);
      w.kv("bias", cell.bias);
    }
    w.kv("bandwidth", cell.bandwidth);
    if (!cell.warnings.empty()) {
      w.key("warnings");
      w.begin_array();
      for (const auto& warning : cell.warnings)
        w.value(warning);
      w.end_array();
    }
    w.end_object();
  }
  w.end_array();
  if (include_timing) {
    w.key("timing");
    w.begin_object();
    w.kv("wall_ms", report.wall_ms);
    w.kv("threads", report.threads_used);
    w.end_object();
  }
  w.end_object();
  return w.take();
}

std::string to_json(const HypothesisReport& report)
{
  JsonWriter w;
  w.begin_object();
  w.kv("schema", "fgt-hypothesis-report/1");
  w.kv("kernel", report.kernel_name);
  w.kv("tolerance", report.tolerance);
  w.kv("all_checkable_passed", report.all_checkable_passed());
  w.key("checks");
  w.begin_array();
  for (const auto& check : report.checks) {
    w.begin_object();
    w.kv("id", check.id);
    w.kv("subject", check.subject);
    const char* status = check.status == HypothesisStatus::pass ? "pass"
                         : check.status == HypothesisStatus::fail ? "fail"
                                                                  : "informational";
    w.kv("status", status);
    w.kv("detail", check.detail);
    if (!check.measurements.empty()) {
      w.key("measurements");
      w.begin_object();
      for (const auto& [name, value] : check.measurements)
        w.kv(name, value);
      w.end_object();
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.take();
}

SimulationConfig simulation_config_from_json(const std::string& json_text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfigError(std::string("config parse error: ") + e.what());
  }

  SimulationConfig cfg;
  try {
    if (j.contains("distribution")) {
      const auto& d = j.at("distribution");
      cfg.distribution.name = d.value("name", std::string("uniform"));
      cfg.distribution.x0 = d.value("x0", 0.0);
      cfg.distribution.beta = d.value("beta", 0.0);
      cfg.distribution.upper = d.value("upper", 1.0);
    }
    cfg.n = j.value("n", cfg.n);
    cfg.replications = j.value("replications", cfg.replications);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    if (j.contains("z_grid"))
      cfg.z_grid = j.at("z_grid").get<std::vector<double>>();
    if (j.contains("alpha_grid"))
      cfg.alpha_grid = j.at("alpha_grid").get<std::vector<double>>();
    if (j.contains("estimators")) {
      cfg.estimators.clear();
      for (const auto& name : j.at("estimators"))
        cfg.estimators.push_back(estimator_from_string(name.get<std::string>()));
    }
    if (j.contains("bandwidth_rule")) {
      const auto& b = j.at("bandwidth_rule");
      cfg.bandwidth_rule =
        bandwidth_rule_from_string(b.value("name", std::string("nlogn")), b.value("h", 0.0));
    }
    cfg.adaptive_sensitivity = j.value("adaptive_sensitivity", cfg.adaptive_sensitivity);
    cfg.kernel_name = j.value("kernel", cfg.kernel_name);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

} // namespace fgt
