#include "fgt/density.hpp"

#include <cmath>

#include "fgt/errors.hpp"
#include "fgt/summation.hpp"

namespace fgt {

namespace {

void require_bandwidth(double h)
{
  if (!(h > 0.0))
    throw InvalidBandwidthError("bandwidth must be positive");
}

} // namespace

double classical_density(const IncomeSample& sample, const Kernel& kernel, double h, double x)
{
  require_bandwidth(h);
  const double radius = kernel.effective_support_radius;
  NeumaierSum sum;
  for (double xi : sample.values()) {
    const double u = (x - xi) / h;
    if (std::abs(u) > radius)
      continue;
    sum.add(kernel.eval(u));
  }
  return sum.value() / (static_cast<double>(sample.size()) * h);
}

double bias_corrected_density(const IncomeSample& sample, const Kernel& kernel, double h,
                              double x)
{
  require_bandwidth(h);
  const double radius = kernel.effective_support_radius;
  NeumaierSum sum_k;
  NeumaierSum sum_kdd;
  for (double xi : sample.values()) {
    const double u = (x - xi) / h;
    if (std::abs(u) > radius)
      continue;
    sum_k.add(kernel.eval(u));
    sum_kdd.add(kernel.eval_second_derivative(u));
  }
  const double n = static_cast<double>(sample.size());
  return sum_k.value() / (n * h) -
         (h / (2.0 * n)) * kernel.second_moment * sum_kdd.value();
}

} // namespace fgt
