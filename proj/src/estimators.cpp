#include "fgt/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fgt/density.hpp"
#include "fgt/errors.hpp"
#include "fgt/quadrature.hpp"
#include "fgt/summation.hpp"

namespace fgt {

namespace {

void require_bandwidth(double h)
{
  if (!(h > 0.0))
    throw InvalidBandwidthError("bandwidth must be positive");
}

std::vector<std::string> kernel_estimate_warnings(const FgtParams& params, double h)
{
  std::vector<std::string> warnings;
  if (!params.theory_covered()) {
    std::ostringstream os;
    os << "alpha=" << params.alpha << " outside the alpha = 0 or alpha >= 1 theory";
    warnings.push_back(os.str());
  }
  if (h > params.z)
    warnings.push_back("degenerate grid: h > z, single cell i = 0");
  return warnings;
}

// Double grid sum (1/n) sum_j sum_i w_i [K(u) - corr K''(u)], u = i - X_j/h.
// Only grid points within the kernel's effective support of X_j contribute;
// everything farther is below the kernel's 1e-12 support cutoff.
double grid_double_sum(const IncomeSample& sample, const Kernel& kernel, double h, double z,
                       double alpha, double corr)
{
  const std::int64_t m = grid_cell_count(z, h);
  const double radius = kernel.effective_support_radius;
  const bool windowed = std::isfinite(radius);

  // Weight cache for the shared fixed-h grid; skipped for alpha = 0 (all
  // weights one) and for degenerate huge grids.
  std::vector<double> weights;
  const bool cache_weights = alpha != 0.0 && m < (1 << 22);
  if (cache_weights) {
    weights.resize(static_cast<std::size_t>(m) + 1);
    for (std::int64_t i = 0; i <= m; ++i)
      weights[static_cast<std::size_t>(i)] = grid_weight(z, static_cast<double>(i) * h, alpha);
  }

  NeumaierSum outer;
  for (double x : sample.values()) {
    const double t = x / h;
    std::int64_t ilo = 0;
    std::int64_t ihi = m;
    if (windowed) {
      ilo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - radius)));
      ihi = std::min<std::int64_t>(m, static_cast<std::int64_t>(std::floor(t + radius)));
    }
    if (ilo > ihi)
      continue;
    NeumaierSum inner;
    for (std::int64_t i = ilo; i <= ihi; ++i) {
      const double u = static_cast<double>(i) - t;
      double term = kernel.eval(u);
      if (corr != 0.0)
        term -= corr * kernel.eval_second_derivative(u);
      double w = 1.0;
      if (alpha != 0.0) {
        w = cache_weights ? weights[static_cast<std::size_t>(i)]
                          : grid_weight(z, static_cast<double>(i) * h, alpha);
      }
      inner.add(w * term);
    }
    outer.add(inner.value());
  }
  return outer.value() / static_cast<double>(sample.size());
}

FgtEstimate make_grid_estimate(const IncomeSample& sample, const Kernel& kernel, double h,
                               const FgtParams& params, EstimatorId id, double corr)
{
  require_bandwidth(h);
  FgtEstimate est;
  est.value = grid_double_sum(sample, kernel, h, params.z, params.alpha, corr);
  est.estimator_id = id;
  est.bandwidth = h;
  est.grid_cells = grid_cell_count(params.z, h);
  est.n = sample.size();
  est.warnings = kernel_estimate_warnings(params, h);
  return est;
}

} // namespace

FgtParams::FgtParams(double z_, double alpha_)
  : z(z_)
  , alpha(alpha_)
{
  if (!(z > 0.0))
    throw InvalidArgumentError("poverty line z must be positive");
  if (!(alpha >= 0.0))
    throw InvalidArgumentError("poverty aversion alpha must be nonnegative");
}

std::string_view to_string(EstimatorId id)
{
  switch (id) {
    case EstimatorId::empirical: return "empirical";
    case EstimatorId::classical: return "classical";
    case EstimatorId::adaptive: return "adaptive";
    case EstimatorId::bias_reduced: return "bias_reduced";
  }
  return "unknown";
}

EstimatorId estimator_from_string(std::string_view name)
{
  if (name == "empirical")
    return EstimatorId::empirical;
  if (name == "classical")
    return EstimatorId::classical;
  if (name == "adaptive")
    return EstimatorId::adaptive;
  if (name == "bias_reduced" || name == "bias-reduced")
    return EstimatorId::bias_reduced;
  throw InvalidArgumentError("unknown estimator '" + std::string(name) +
                             "' (known: empirical, classical, adaptive, bias-reduced)");
}

std::int64_t grid_cell_count(double z, double h)
{
  require_bandwidth(h);
  if (!(z > 0.0))
    throw InvalidArgumentError("grid_cell_count requires z > 0");
  const long double q = static_cast<long double>(z) / static_cast<long double>(h);
  return static_cast<std::int64_t>(std::floor(q + 1e-12L));
}

double grid_weight(double z, double x, double alpha)
{
  if (alpha == 0.0)
    return 1.0;
  const double base = (z - x) / z;
  if (base <= 0.0)
    return 0.0;
  return std::pow(base, alpha);
}

FgtEstimate empirical_fgt(const IncomeSample& sample, const FgtParams& params)
{
  NeumaierSum sum;
  if (params.alpha == 0.0) {
    for (double x : sample.values())
      sum.add(x < params.z ? 1.0 : 0.0);
  } else {
    for (double x : sample.values()) {
      const double base = 1.0 - x / params.z;
      if (base > 0.0)
        sum.add(std::pow(base, params.alpha));
    }
  }
  FgtEstimate est;
  est.value = sum.value() / static_cast<double>(sample.size());
  est.estimator_id = EstimatorId::empirical;
  est.n = sample.size();
  return est;
}

FgtEstimate classical_kernel_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                                 const FgtParams& params)
{
  return make_grid_estimate(sample, kernel, h, params, EstimatorId::classical, 0.0);
}

FgtEstimate bias_reduced_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                             const FgtParams& params)
{
  const double corr = 0.5 * h * h * kernel.second_moment;
  return make_grid_estimate(sample, kernel, h, params, EstimatorId::bias_reduced, corr);
}

FgtEstimate adaptive_kernel_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                                const LocalFactors& factors, const FgtParams& params)
{
  require_bandwidth(h);
  if (factors.lambdas.size() != sample.size())
    throw InvalidArgumentError("local factor count does not match sample size");

  const double radius = kernel.effective_support_radius;
  const bool windowed = std::isfinite(radius);
  NeumaierSum outer;
  for (std::size_t j = 0; j < sample.size(); ++j) {
    const double lambda = factors.lambdas[j];
    if (!(lambda > 0.0))
      throw InvalidArgumentError("local factors must be positive");
    const double hj = h * lambda;
    const std::int64_t mj = grid_cell_count(params.z, hj);
    const double t = sample.values()[j] / hj;
    std::int64_t ilo = 0;
    std::int64_t ihi = mj;
    if (windowed) {
      ilo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t - radius)));
      ihi = std::min<std::int64_t>(mj, static_cast<std::int64_t>(std::floor(t + radius)));
    }
    if (ilo > ihi)
      continue;
    NeumaierSum inner;
    for (std::int64_t i = ilo; i <= ihi; ++i) {
      const double u = static_cast<double>(i) - t;
      double w = 1.0;
      if (params.alpha != 0.0)
        w = grid_weight(params.z, static_cast<double>(i) * hj, params.alpha);
      inner.add(w * kernel.eval(u));
    }
    outer.add(inner.value());
  }

  FgtEstimate est;
  est.value = outer.value() / static_cast<double>(sample.size());
  est.estimator_id = EstimatorId::adaptive;
  est.bandwidth = h;
  est.grid_cells = grid_cell_count(params.z, h);
  est.n = sample.size();
  est.warnings = kernel_estimate_warnings(params, h);
  return est;
}

LocalFactors local_bandwidth_factors(const IncomeSample& sample, const Kernel& kernel,
                                     double pilot_h, double sensitivity)
{
  require_bandwidth(pilot_h);
  if (!(sensitivity >= 0.0 && sensitivity <= 1.0))
    throw InvalidArgumentError("sensitivity must lie in [0, 1]");

  const std::size_t n = sample.size();
  LocalFactors factors;
  factors.pilot_bandwidth = pilot_h;
  factors.sensitivity = sensitivity;
  factors.lambdas.assign(n, 1.0);
  if (sensitivity == 0.0)
    return factors;

  std::vector<double> log_pilot(n);
  NeumaierSum log_sum;
  for (std::size_t j = 0; j < n; ++j) {
    const double fj =
      std::max(classical_density(sample, kernel, pilot_h, sample.values()[j]), 1e-12);
    log_pilot[j] = std::log(fj);
    log_sum.add(log_pilot[j]);
  }
  const double log_geo_mean = log_sum.value() / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j)
    factors.lambdas[j] = std::exp(-sensitivity * (log_pilot[j] - log_geo_mean));
  return factors;
}

double remainder_term(const IncomeSample& sample, const Kernel& kernel, double h,
                      const FgtParams& params)
{
  require_bandwidth(h);
  const std::int64_t m = grid_cell_count(params.z, h);
  const double xm = static_cast<double>(m) * h;
  const double prefactor = ((params.z - xm) - h) / h;
  const double weight = grid_weight(params.z, xm, params.alpha);
  const double corr = 0.5 * h * h * kernel.second_moment;
  const double radius = kernel.effective_support_radius;

  NeumaierSum sum;
  for (double x : sample.values()) {
    const double u = static_cast<double>(m) - x / h;
    if (std::abs(u) > radius)
      continue;
    sum.add(kernel.eval(u) - corr * kernel.eval_second_derivative(u));
  }
  return prefactor * weight * sum.value() / static_cast<double>(sample.size());
}

double integral_form_fgt(const IncomeSample& sample, const Kernel& kernel, double h,
                         const FgtParams& params, double tol)
{
  require_bandwidth(h);
  if (!(tol > 0.0))
    throw InvalidArgumentError("integral_form_fgt requires tol > 0");
  const double z = params.z;
  const double alpha = params.alpha;
  const auto integrand = [&](double x) {
    double weight = 1.0;
    if (alpha != 0.0) {
      const double base = (z - x) / z;
      weight = base > 0.0 ? std::pow(base, alpha) : 0.0;
    }
    return weight * bias_corrected_density(sample, kernel, h, x);
  };
  return integrate_or_throw(integrand, 0.0, z, tol, 60,
                            "integral_form_fgt quadrature did not reach tolerance");
}

double default_bandwidth(std::size_t n)
{
  if (n < 2)
    throw InvalidArgumentError("default_bandwidth requires n >= 2");
  const double nn = static_cast<double>(n);
  return 1.0 / std::sqrt(nn * std::log(nn));
}

double lil_bandwidth(std::size_t n)
{
  if (n < 3)
    throw InvalidArgumentError("lil_bandwidth requires n >= 3");
  const double nn = static_cast<double>(n);
  return std::pow(std::log(std::log(nn)) / nn, 0.25);
}

double asymptotic_variance(const Kernel& kernel, double p_z_alpha, double p_z_2alpha,
                           std::vector<std::string>* warnings)
{
  if (!(p_z_alpha >= 0.0 && p_z_alpha <= 1.0) || !(p_z_2alpha >= 0.0 && p_z_2alpha <= 1.0))
    throw InvalidArgumentError("asymptotic_variance inputs must lie in [0, 1]");
  if (warnings && p_z_2alpha > p_z_alpha + 1e-12)
    warnings->push_back("P(z,2a) > P(z,a): inconsistent with a nonnegative alpha");
  const double value = kernel.square_integral * p_z_2alpha - p_z_alpha * p_z_alpha;
  if (warnings && value < 0.0)
    warnings->push_back("formula value is negative; a variance cannot be negative "
                        "(known limitation of the displayed limit)");
  return value;
}

double efficiency(const Kernel& kernel, double p_z_alpha, double p_z_2alpha)
{
  const double denom = p_z_2alpha - p_z_alpha * p_z_alpha;
  if (denom == 0.0)
    throw DegenerateCaseError("efficiency denominator P(z,2a) - P(z,a)^2 vanishes");
  return (kernel.square_integral * p_z_2alpha - p_z_alpha * p_z_alpha) / denom;
}

double BandwidthRule::resolve(std::size_t n) const
{
  switch (kind) {
    case BandwidthRuleKind::nlogn: return default_bandwidth(n);
    case BandwidthRuleKind::lil: return lil_bandwidth(n);
    case BandwidthRuleKind::fixed:
      if (!(fixed_h > 0.0))
        throw InvalidBandwidthError("fixed bandwidth must be positive");
      return fixed_h;
  }
  throw InvalidArgumentError("unknown bandwidth rule");
}

std::string BandwidthRule::name() const
{
  switch (kind) {
    case BandwidthRuleKind::nlogn: return "nlogn";
    case BandwidthRuleKind::lil: return "lil";
    case BandwidthRuleKind::fixed: return "fixed";
  }
  return "unknown";
}

BandwidthRule bandwidth_rule_from_string(std::string_view name, double fixed_h)
{
  if (name == "nlogn")
    return BandwidthRule::nlogn();
  if (name == "lil")
    return BandwidthRule::lil();
  if (name == "fixed")
    return BandwidthRule::fixed(fixed_h);
  throw InvalidArgumentError("unknown bandwidth rule '" + std::string(name) +
                             "' (known: nlogn, lil, fixed)");
}

bool bandwidth_regime_satisfied(const BandwidthRule& rule, std::size_t n)
{
  // Evaluate q(n) = n h(n)^2 / log log n at growing n; the regime requires
  // q -> infinity, checked as sustained growth.
  const auto q = [&](std::size_t m) {
    const double h = rule.resolve(m);
    const double mm = static_cast<double>(m);
    return mm * h * h / std::log(std::log(mm));
  };
  const std::size_t n0 = std::max<std::size_t>(n, 16);
  const double q0 = q(n0);
  const double q1 = q(n0 * 16);
  const double q2 = q(n0 * 256);
  return q1 > q0 && q2 > q1 && q2 > 1.5 * q0;
}

std::string bandwidth_regime_note(const BandwidthRule& rule, std::size_t n)
{
  if (bandwidth_regime_satisfied(rule, n))
    return {};
  return "bandwidth rule '" + rule.name() +
         "' does not satisfy the n*h^2/loglog(n) -> infinity regime of the "
         "uniform-consistency theorems";
}

} // namespace fgt
