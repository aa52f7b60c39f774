#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fgt/sample.hpp"

namespace fgt {

struct SupportInterval {
  double lower = 0.0;
  double upper = 0.0;
};

//! Income-distribution model: pdf/cdf/inverse-cdf bundle with a nonnegative
//! support, used for sampling and for the exact-index quadrature oracle.
struct IncomeDistribution {
  std::string name;
  std::function<double(double)> pdf;
  std::function<double(double)> cdf;
  std::function<double(double)> inverse_cdf; // p in [0,1] -> quantile
  SupportInterval support;
  std::vector<std::pair<std::string, double>> params; // echoed into reports
};

// Uniform distribution on [0, 1]; analytic oracle for tests and diagnostics.
IncomeDistribution uniform_01();

// Pareto(scale x0, shape beta) truncated and renormalized to [x0, upper]:
//   cdf(x) = (1 - (x0/x)^beta) / (1 - (x0/upper)^beta).
// Throws InvalidParameterError unless 0 < x0 < upper and beta > 0.
IncomeDistribution truncated_pareto(double x0, double beta, double upper);

// n inverse-cdf draws from a seeded splitmix64 stream. Same (dist, n, seed)
// gives a bit-identical sample.
IncomeSample draw_sample(const IncomeDistribution& dist, std::size_t n, std::uint64_t seed);

// Exact FGT index P(z, alpha) = int_0^z ((z-x)/z)^alpha f(x) dx by adaptive
// quadrature to absolute tolerance tol; 0 when z <= 0. Throws
// NumericalFailureError (carrying the best estimate) on non-convergence.
double true_fgt(const IncomeDistribution& dist, double z, double alpha, double tol = 1e-10);

} // namespace fgt
