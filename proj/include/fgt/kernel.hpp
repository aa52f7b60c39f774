#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fgt {

//! Smoothing-kernel bundle used by every kernel-based estimator.
//!
//! The second derivative is carried in closed form: the bias-corrected
//! estimators evaluate K'' at every data point and numerical second
//! derivatives would amplify noise there.
struct Kernel {
  std::string name;
  std::function<double(double)> eval;                    // u -> K(u)
  std::function<double(double)> eval_second_derivative;  // u -> K''(u)
  double second_moment = 0.0;                            // mu2 = int u^2 K(u) du
  double square_integral = 0.0;                          // R(K) = int K(u)^2 du
  // Radius beyond which |K| and |K''| are below 1e-12. Infinite-support
  // kernels are integrated (and summed) over [-R, R].
  double effective_support_radius = 0.0;
};

// Standard normal kernel: K(u) = exp(-u^2/2)/sqrt(2*pi), K''(u) = (u^2-1)K(u),
// mu2 = 1, R(K) = 1/(2*sqrt(pi)). Support truncated at radius 8 (tail mass
// below 1.3e-15).
Kernel gaussian_kernel();

// Lookup for CLI/config kernel selection. Throws InvalidArgumentError for
// unknown names.
Kernel kernel_by_name(std::string_view name);
std::vector<std::string> known_kernel_names();

enum class HypothesisStatus { pass, fail, informational };

struct HypothesisCheck {
  std::string id;        // "H1".."H6"
  std::string subject;   // what was checked ("K", "K''", ...)
  HypothesisStatus status = HypothesisStatus::pass;
  std::string detail;
  std::vector<std::pair<std::string, double>> measurements;
};

struct HypothesisReport {
  std::string kernel_name;
  double tolerance = 0.0;
  std::vector<HypothesisCheck> checks;

  bool all_checkable_passed() const;
  const HypothesisCheck* find(std::string_view id, std::string_view subject) const;
};

//! Numerically check the kernel hypotheses needed by the estimators:
//!   H1  sup|K| and sup|K''| finite (dense-grid scan)
//!   H2  int K = 1 within tol; for K'' the integral must vanish instead
//!   H3  |u K(u)| -> 0 at the support edge, for K and K''
//!   H4  bounded variation (grid total variation converges under refinement)
//!   H5  int |u K(u)| du and int u^2 K(u) du finite, for K and K''
//!   H6  Lipschitz-majorant existence: not machine-checkable, reported
//!       informational only
//! Also cross-checks the stored second_moment / square_integral against
//! quadrature of eval. A non-integrable kernel yields a failure report, not
//! an exception.
HypothesisReport verify_hypotheses(const Kernel& kernel, double tol);

} // namespace fgt
