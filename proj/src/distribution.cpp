#include "fgt/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "fgt/errors.hpp"
#include "fgt/quadrature.hpp"

namespace fgt {

namespace {

double require_probability(double p)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidArgumentError("inverse_cdf argument must lie in [0, 1]");
  return p;
}

} // namespace

IncomeDistribution uniform_01()
{
  IncomeDistribution d;
  d.name = "uniform";
  d.support = { 0.0, 1.0 };
  d.pdf = [](double x) { return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0; };
  d.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
  d.inverse_cdf = [](double p) { return require_probability(p); };
  return d;
}

IncomeDistribution truncated_pareto(double x0, double beta, double upper)
{
  if (!(x0 > 0.0) || !(upper > x0))
    throw InvalidParameterError("truncated_pareto requires 0 < x0 < upper");
  if (!(beta > 0.0))
    throw InvalidParameterError("truncated_pareto requires beta > 0");

  // Normalizing mass of the untruncated Pareto on [x0, upper].
  const double mass = 1.0 - std::pow(x0 / upper, beta);

  IncomeDistribution d;
  d.name = "pareto";
  d.support = { x0, upper };
  d.params = { { "x0", x0 }, { "beta", beta }, { "upper", upper } };
  d.pdf = [=](double x) {
    if (x < x0 || x > upper)
      return 0.0;
    return beta * std::pow(x0, beta) * std::pow(x, -beta - 1.0) / mass;
  };
  d.cdf = [=](double x) {
    if (x <= x0)
      return 0.0;
    if (x >= upper)
      return 1.0;
    return (1.0 - std::pow(x0 / x, beta)) / mass;
  };
  d.inverse_cdf = [=](double p) {
    require_probability(p);
    return x0 * std::pow(1.0 - p * mass, -1.0 / beta);
  };
  return d;
}

IncomeSample draw_sample(const IncomeDistribution& dist, std::size_t n, std::uint64_t seed)
{
  if (n == 0)
    throw InvalidArgumentError("draw_sample requires n >= 1");
  SplitMix64 gen(seed);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i)
    values[i] = dist.inverse_cdf(gen.next_double());
  return IncomeSample(std::move(values));
}

double true_fgt(const IncomeDistribution& dist, double z, double alpha, double tol)
{
  if (alpha < 0.0)
    throw InvalidArgumentError("true_fgt requires alpha >= 0");
  if (tol <= 0.0)
    throw InvalidArgumentError("true_fgt requires tol > 0");
  if (z <= 0.0)
    return 0.0;

  const double lo = std::max(0.0, dist.support.lower);
  const double hi = std::min(z, dist.support.upper);
  if (hi <= lo)
    return 0.0;

  const auto integrand = [&](double x) {
    double weight = 1.0;
    if (alpha != 0.0) {
      const double base = (z - x) / z;
      weight = base > 0.0 ? std::pow(base, alpha) : 0.0;
    }
    return weight * dist.pdf(x);
  };
  return integrate_or_throw(integrand, lo, hi, tol, 60,
                            "true_fgt quadrature did not reach tolerance");
}

} // namespace fgt
