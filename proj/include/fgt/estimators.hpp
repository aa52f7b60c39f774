#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgt/kernel.hpp"
#include "fgt/sample.hpp"

namespace fgt {

//! Poverty line and aversion. Validated at construction: z > 0, alpha >= 0.
struct FgtParams {
  double z;
  double alpha;

  FgtParams(double z_, double alpha_);

  // The grid estimators' theory covers alpha = 0 or alpha >= 1 only;
  // alpha in (0,1) is computed but flagged.
  bool theory_covered() const noexcept { return alpha == 0.0 || alpha >= 1.0; }
};

enum class EstimatorId { empirical, classical, adaptive, bias_reduced };

std::string_view to_string(EstimatorId id);
EstimatorId estimator_from_string(std::string_view name);

struct FgtEstimate {
  double value = 0.0;
  EstimatorId estimator_id = EstimatorId::empirical;
  std::optional<double> bandwidth;        // absent for empirical
  std::optional<std::int64_t> grid_cells; // [z/h], absent for empirical
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

//! Per-observation bandwidth deflators lambda_j with geometric mean one.
struct LocalFactors {
  std::vector<double> lambdas;
  double pilot_bandwidth = 0.0;
  double sensitivity = 0.0;
};

// Integer part [z/h], computed with a 1e-12 upward nudge so that samples of
// z exactly divisible by h do not flip down a cell from representation error.
std::int64_t grid_cell_count(double z, double h);

// Grid weight ((z - x)/z)^alpha with the grid convention: alpha = 0 gives
// weight 1 everywhere (including x = z), negative bases clamp to 0.
double grid_weight(double z, double x, double alpha);

// Empirical estimator (1/n) sum_i (1 - X_i/z)_+^alpha. The alpha = 0 term is
// the indicator {X_i < z}: the headcount ratio, not the naive 0^0 = 1 power.
FgtEstimate empirical_fgt(const IncomeSample& sample, const FgtParams& params);

// Grid-sum kernel estimator
//   (1/n) sum_j sum_{i=0}^{[z/h]} ((z - i h)/z)^alpha K((i h - X_j)/h).
// h > z is a degenerate single-cell grid (warning, not an error).
FgtEstimate classical_kernel_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                                 const FgtParams& params);

// Bias-reduced grid estimator: same sum with the bracket
//   K(u) - (h^2/2) mu2 K''(u)
// in place of K(u). With mu2 = 0 this reduces to the classical estimator
// bit-for-bit.
FgtEstimate bias_reduced_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                             const FgtParams& params);

// Adaptive estimator with per-observation bandwidth h*lambda_j and grid
//   (1/n) sum_j sum_{i=0}^{[z/(h lambda_j)]} ((z - i h lambda_j)/z)^alpha
//                                            K((i h lambda_j - X_j)/(h lambda_j)).
FgtEstimate adaptive_kernel_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                                const LocalFactors& factors, const FgtParams& params);

// Silverman-style local factors lambda_j = (fhat(X_j)/g)^(-sensitivity) where
// fhat is the classical pilot density (floored at 1e-12) and g the geometric
// mean of the fhat values; the output has geometric mean one.
LocalFactors local_bandwidth_factors(const IncomeSample& sample, const Kernel& kernel,
                                     double pilot_h, double sensitivity);

// Boundary-cell remainder V_{n,b}(z) making the Riemann sum S_n equal
// bias_reduced + remainder; vanishes in probability at rate O(h).
double remainder_term(const IncomeSample& sample, const Kernel& kernel, double h,
                      const FgtParams& params);

// Integral form int_0^z ((z-x)/z)^alpha f_tilde(x) dx of the bias-corrected
// density, by adaptive quadrature; the continuous counterpart of the grid sum.
double integral_form_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                         const FgtParams& params, double tol);

// h = (n ln n)^(-1/2); requires n >= 2.
double default_bandwidth(std::size_t n);

// h = ((ln ln n)/n)^(1/4); requires n >= 3.
double lil_bandwidth(std::size_t n);

// Asymptotic variance formula R(K) P(z,2a) - P(z,a)^2, returned verbatim.
// The formula can be negative (a variance cannot be); that and an inverted
// P(z,2a) > P(z,a) ordering are reported through `warnings`, not as errors.
double asymptotic_variance(const Kernel& kernel, double p_z_alpha, double p_z_2alpha,
                           std::vector<std::string>* warnings = nullptr);

// Efficiency e(z,a) = (R(K) P(z,2a) - P(z,a)^2) / (P(z,2a) - P(z,a)^2).
// Throws DegenerateCaseError when the denominator vanishes.
double efficiency(const Kernel& kernel, double p_z_alpha, double p_z_2alpha);

enum class BandwidthRuleKind { nlogn, lil, fixed };

struct BandwidthRule {
  BandwidthRuleKind kind = BandwidthRuleKind::nlogn;
  double fixed_h = 0.0;

  double resolve(std::size_t n) const;
  std::string name() const;

  static BandwidthRule nlogn() { return { BandwidthRuleKind::nlogn, 0.0 }; }
  static BandwidthRule lil() { return { BandwidthRuleKind::lil, 0.0 }; }
  static BandwidthRule fixed(double h) { return { BandwidthRuleKind::fixed, h }; }
};

BandwidthRule bandwidth_rule_from_string(std::string_view name, double fixed_h = 0.0);

// Whether n h(n)^2 / log log n grows along the rule, the bandwidth regime of
// the uniform-consistency theorems. The (n ln n)^(-1/2) rule does not satisfy
// it; the CLI surfaces the note.
bool bandwidth_regime_satisfied(const BandwidthRule& rule, std::size_t n);
std::string bandwidth_regime_note(const BandwidthRule& rule, std::size_t n);

} // namespace fgt
