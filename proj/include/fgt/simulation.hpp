#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fgt/distribution.hpp"
#include "fgt/estimators.hpp"

namespace fgt {

//! Serializable distribution selector (uniform or truncated pareto).
struct DistributionSpec {
  std::string name = "uniform";
  double x0 = 0.0;
  double beta = 0.0;
  double upper = 1.0;

  IncomeDistribution build() const;

  static DistributionSpec uniform();
  static DistributionSpec pareto(double x0, double beta, double upper);
};

struct SimulationConfig {
  DistributionSpec distribution = DistributionSpec::uniform();
  std::size_t n = 1000;
  std::size_t replications = 50;
  std::uint64_t base_seed = 1;
  std::vector<double> z_grid;
  std::vector<double> alpha_grid;
  std::vector<EstimatorId> estimators;
  BandwidthRule bandwidth_rule = BandwidthRule::nlogn();
  double adaptive_sensitivity = 0.5;
  std::string kernel_name = "gaussian";

  // Throws InvalidConfigError on violated invariants (n >= 2, R >= 2,
  // nonempty grids, z values inside the distribution support, ...).
  void validate() const;

  // The benchmark preset: truncated Pareto(0.02, 0.2, 1), n = 1000, R = 50,
  // z in {0.1..0.7}, alpha in {0, 1, 2}, Gaussian kernel, h = (n ln n)^(-1/2),
  // estimators {bias_reduced, classical, adaptive}.
  static SimulationConfig paper_table_preset(std::uint64_t base_seed);
};

struct SimulationCell {
  double z = 0.0;
  double alpha = 0.0;
  EstimatorId estimator = EstimatorId::empirical;
  double mean = 0.0;       // (1/R) sum_r P_r
  double mse = 0.0;        // (1/R) sum_r (P_r - P)^2
  double variance = 0.0;   // (1/R) sum_r (P_r - mean)^2
  double bias = 0.0;       // mean - P
  double true_value = 0.0; // P(z, alpha) from quadrature
  double bandwidth = 0.0;
  std::vector<std::string> warnings;
  bool failed = false;
  std::string error;
};

struct SimulationReport {
  SimulationConfig config;
  std::string generator_algorithm;
  std::string seed_derivation;
  std::vector<std::string> notes;
  std::vector<SimulationCell> cells; // ordered by (alpha, z, estimator)
  double wall_ms = 0.0;              // timing metadata, excluded from determinism
  unsigned threads_used = 1;

  const SimulationCell* find(double z, double alpha, EstimatorId estimator) const;
};

// Monte Carlo harness: R replicated samples with per-replication seeds
// derived from base_seed, every requested estimator on every (z, alpha) cell,
// R-denominator statistics against true_fgt at tolerance 1e-10. Replications
// may run concurrently; the report is byte-identical for any thread count
// (threads = 0 picks the hardware count).
SimulationReport run_simulation(const SimulationConfig& config, unsigned threads = 0);

// Benchmark-table view (requires bias_reduced, classical and adaptive in the
// estimator set): per alpha the mse_1..3 / var_1..3 rows over the z columns,
// plus counts of cells where bias_reduced beats classical (mse) and adaptive
// (variance).
std::string paper_table(const SimulationConfig& config, unsigned threads = 0);
std::string paper_table_text(const SimulationReport& report);
std::string paper_table_csv(const SimulationReport& report);

struct PaperTableComparison {
  int cells_total = 0;
  int mse_bias_reduced_le_classical = 0;
  int var_bias_reduced_le_adaptive = 0;
};
PaperTableComparison paper_table_comparison(const SimulationReport& report);

} // namespace fgt
