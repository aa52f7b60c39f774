#pragma once

#include "fgt/kernel.hpp"
#include "fgt/sample.hpp"

namespace fgt {

// Parzen-Rosenblatt estimate (1/(n h)) sum_i K((x - X_i)/h).
// Throws InvalidBandwidthError when h <= 0.
double classical_density(const IncomeSample& sample, const Kernel& kernel, double h, double x);

// Bias-corrected estimate
//   (1/(n h)) sum_i K((x - X_i)/h)  -  (h/(2 n)) mu2 sum_i K''((x - X_i)/h).
// The correction is signed; negative values are returned as-is (the grid
// estimators consume the signed quantity, clipping would change them).
double bias_corrected_density(const IncomeSample& sample, const Kernel& kernel, double h,
                              double x);

} // namespace fgt
