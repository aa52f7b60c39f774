#pragma once

#include <cmath>
#include <span>

namespace fgt {

// Neumaier-compensated accumulator. The grid estimators sum up to n*[z/h]
// terms of mixed sign, and several acceptance tolerances sit at 1e-12, so
// plain left-to-right summation is not good enough.
class NeumaierSum {
public:
  void add(double x) noexcept
  {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept
{
  NeumaierSum acc;
  for (double x : xs)
    acc.add(x);
  return acc.value();
}

inline double compensated_mean(std::span<const double> xs) noexcept
{
  if (xs.empty())
    return 0.0;
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

} // namespace fgt
