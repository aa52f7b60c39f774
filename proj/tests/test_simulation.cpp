#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <json.hpp>

#include "fgt/errors.hpp"
#include "fgt/report.hpp"
#include "fgt/simulation.hpp"

using namespace fgt;

namespace {

SimulationConfig small_config()
{
  SimulationConfig cfg;
  cfg.distribution = DistributionSpec::uniform();
  cfg.n = 200;
  cfg.replications = 20;
  cfg.base_seed = 5;
  cfg.z_grid = { 0.3, 0.5 };
  cfg.alpha_grid = { 0.0, 1.0 };
  cfg.estimators = { EstimatorId::empirical, EstimatorId::classical, EstimatorId::adaptive,
                     EstimatorId::bias_reduced };
  return cfg;
}

double median(std::vector<double> v)
{
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

TEST_CASE("config validation")
{
  SimulationConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());

  SUBCASE("replications below two")
  {
    cfg.replications = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
  SUBCASE("empty estimator subset")
  {
    cfg.estimators.clear();
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
  SUBCASE("z outside the support")
  {
    cfg.z_grid = { 1.5 };
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
  SUBCASE("nonpositive z")
  {
    cfg.z_grid = { 0.0 };
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
  SUBCASE("tiny n")
  {
    cfg.n = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
  SUBCASE("sensitivity out of range")
  {
    cfg.adaptive_sensitivity = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidConfigError);
  }
}

TEST_CASE("reports are independent of the thread count")
{
  const SimulationConfig cfg = small_config();
  const SimulationReport serial = run_simulation(cfg, 1);
  const SimulationReport parallel = run_simulation(cfg, 8);
  REQUIRE(serial.cells.size() == parallel.cells.size());
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].mean == parallel.cells[i].mean);
    CHECK(serial.cells[i].mse == parallel.cells[i].mse);
    CHECK(serial.cells[i].variance == parallel.cells[i].variance);
  }
  CHECK(to_json(serial, false) == to_json(parallel, false));
}

TEST_CASE("bias-variance identity holds per cell")
{
  const SimulationReport report = run_simulation(small_config(), 0);
  REQUIRE(report.cells.size() == 16);
  for (const auto& cell : report.cells) {
    REQUIRE_FALSE(cell.failed);
    CHECK(std::abs(cell.mse - (cell.variance + cell.bias * cell.bias)) < 1e-10);
    CHECK(cell.variance >= 0.0);
    CHECK(cell.mse >= 0.0);
  }
}

TEST_CASE("degenerate replications: a near-point-mass income distribution")
{
  SimulationConfig cfg;
  // all draws collapse to ~0.5 regardless of seed
  cfg.distribution = DistributionSpec::pareto(0.5 - 5e-11, 1.0, 0.5);
  cfg.n = 50;
  cfg.replications = 2;
  cfg.base_seed = 9;
  cfg.z_grid = { 0.5 };
  cfg.alpha_grid = { 1.0 };
  cfg.estimators = { EstimatorId::empirical };
  const SimulationReport report = run_simulation(cfg, 1);
  REQUIRE(report.cells.size() == 1);
  const SimulationCell& cell = report.cells.front();
  CHECK(cell.variance < 1e-15);
  CHECK(std::abs(cell.mse - cell.bias * cell.bias) < 1e-12);
}

TEST_CASE("empirical mse sits near its analytic variance on the uniform")
{
  SimulationConfig cfg;
  cfg.distribution = DistributionSpec::uniform();
  cfg.n = 1000;
  cfg.replications = 50;
  cfg.base_seed = 3;
  cfg.z_grid = { 0.5 };
  cfg.alpha_grid = { 1.0 };
  cfg.estimators = { EstimatorId::empirical };
  const SimulationReport report = run_simulation(cfg, 0);
  const SimulationCell& cell = report.cells.front();
  // Var((1 - X/0.5)_+) = 1/6 - 1/16 for X ~ U(0,1); the estimator is unbiased
  const double expected = (1.0 / 6.0 - 1.0 / 16.0) / static_cast<double>(cfg.n);
  CHECK(cell.mse > expected / 3.0);
  CHECK(cell.mse < expected * 3.0);
}

TEST_CASE("median mse decreases as n doubles")
{
  std::vector<std::vector<double>> medians_per_estimator(2);
  for (const std::size_t n : { 500u, 1000u, 2000u }) {
    SimulationConfig cfg;
    cfg.distribution = DistributionSpec::uniform();
    cfg.n = n;
    cfg.replications = 100;
    cfg.base_seed = 77;
    cfg.z_grid = { 0.2, 0.5 };
    cfg.alpha_grid = { 0.0, 1.0 };
    cfg.estimators = { EstimatorId::empirical, EstimatorId::bias_reduced };
    const SimulationReport report = run_simulation(cfg, 0);
    for (int e = 0; e < 2; ++e) {
      std::vector<double> mses;
      for (const auto& cell : report.cells)
        if (cell.estimator == cfg.estimators[static_cast<std::size_t>(e)])
          mses.push_back(cell.mse);
      medians_per_estimator[static_cast<std::size_t>(e)].push_back(median(mses));
    }
  }
  for (const auto& medians : medians_per_estimator) {
    REQUIRE(medians.size() == 3);
    CHECK(medians[1] < medians[0]);
    CHECK(medians[2] < medians[1]);
  }
}

TEST_CASE("paper table preset and rendering")
{
  const SimulationConfig preset = SimulationConfig::paper_table_preset(1);
  CHECK(preset.n == 1000);
  CHECK(preset.replications == 50);
  CHECK(preset.distribution.name == "pareto");
  CHECK(preset.z_grid.size() == 7);
  CHECK(preset.alpha_grid.size() == 3);
  CHECK_NOTHROW(preset.validate());

  // trimmed-down config with the same shape, to keep the test fast
  SimulationConfig cfg = preset;
  cfg.n = 150;
  cfg.replications = 4;
  const SimulationReport report = run_simulation(cfg, 0);
  CHECK(report.cells.size() == 7 * 3 * 3);

  const PaperTableComparison cmp = paper_table_comparison(report);
  CHECK(cmp.cells_total == 21);
  CHECK(cmp.mse_bias_reduced_le_classical >= 0);
  CHECK(cmp.mse_bias_reduced_le_classical <= 21);

  const std::string text = paper_table_text(report);
  CHECK(text.find("mse_1") != std::string::npos);
  CHECK(text.find("var_3") != std::string::npos);
  CHECK(text.find("alpha=2") != std::string::npos);
  const std::string csv = paper_table_csv(report);
  CHECK(csv.find("mse_2") != std::string::npos);

  SimulationConfig missing = cfg;
  missing.estimators = { EstimatorId::bias_reduced, EstimatorId::classical };
  CHECK_THROWS_AS(paper_table(missing, 1), InvalidConfigError);
}

TEST_CASE("simulation report JSON round-trips its config")
{
  SimulationConfig cfg = small_config();
  cfg.bandwidth_rule = BandwidthRule::fixed(0.04);
  const SimulationReport report = run_simulation(cfg, 1);
  const std::string body = to_json(report, true);
  CHECK(body.find("\"timing\"") != std::string::npos);
  CHECK(to_json(report, false).find("\"timing\"") == std::string::npos);

  const SimulationConfig parsed =
    simulation_config_from_json(nlohmann::json::parse(body).at("config").dump());
  CHECK(parsed.n == cfg.n);
  CHECK(parsed.replications == cfg.replications);
  CHECK(parsed.base_seed == cfg.base_seed);
  CHECK(parsed.z_grid == cfg.z_grid);
  CHECK(parsed.alpha_grid == cfg.alpha_grid);
  CHECK(parsed.estimators == cfg.estimators);
  CHECK(parsed.bandwidth_rule.kind == BandwidthRuleKind::fixed);
  CHECK(parsed.bandwidth_rule.fixed_h == 0.04);
  CHECK(parsed.adaptive_sensitivity == cfg.adaptive_sensitivity);
}

TEST_CASE("config parser rejects malformed input")
{
  CHECK_THROWS_AS(simulation_config_from_json("{ not json"), InvalidConfigError);
  CHECK_THROWS_AS(simulation_config_from_json("{\"estimators\": [\"magic\"]}"),
                  InvalidArgumentError);
}

TEST_CASE("seed derivation is splittable and stable")
{
  CHECK(derive_replication_seed(1, 1) != derive_replication_seed(1, 2));
  CHECK(derive_replication_seed(1, 1) != derive_replication_seed(2, 1));
  CHECK(derive_replication_seed(42, 7) == derive_replication_seed(42, 7));
}
