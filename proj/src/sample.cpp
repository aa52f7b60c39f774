#include "fgt/sample.hpp"

#include <cmath>
#include <string>

#include "fgt/errors.hpp"

namespace fgt {

IncomeSample::IncomeSample(std::vector<double> values)
  : values_(std::move(values))
{
  if (values_.empty())
    throw EmptySampleError("income sample must contain at least one observation");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw InvalidArgumentError("income at index " + std::to_string(i) + " is not finite");
    if (values_[i] < 0.0)
      throw InvalidArgumentError("income at index " + std::to_string(i) + " is negative");
  }
}

} // namespace fgt
