#include "fgt/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fgt/errors.hpp"
#include "fgt/quadrature.hpp"

namespace fgt {

namespace {

constexpr double kGaussianNorm = 0.3989422804014326779; // 1/sqrt(2*pi)

double gauss(double u) { return kGaussianNorm * std::exp(-0.5 * u * u); }
double gauss_dd(double u) { return (u * u - 1.0) * gauss(u); }

// Quadrature tolerance used by the verifier. Independent of the pass/fail
// tolerance so the measured values resolve tail masses near machine epsilon.
constexpr double kVerifyQuadTol = 1e-15;

double sup_on_grid(const std::function<double(double)>& f, double radius, int points)
{
  double sup = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double u = -radius + 2.0 * radius * static_cast<double>(i) / points;
    sup = std::max(sup, std::abs(f(u)));
  }
  return sup;
}

double total_variation_on_grid(const std::function<double(double)>& f, double radius, int cells)
{
  double tv = 0.0;
  double prev = f(-radius);
  for (int i = 1; i <= cells; ++i) {
    const double u = -radius + 2.0 * radius * static_cast<double>(i) / cells;
    const double cur = f(u);
    tv += std::abs(cur - prev);
    prev = cur;
  }
  return tv;
}

double tail_sup_u_times(const std::function<double(double)>& f, double radius)
{
  // max |u f(u)| over |u| in [R, 2R], sampled densely.
  double worst = 0.0;
  const int points = 2000;
  for (int i = 0; i <= points; ++i) {
    const double u = radius + radius * static_cast<double>(i) / points;
    worst = std::max({ worst, std::abs(u * f(u)), std::abs(u * f(-u)) });
  }
  return worst;
}

struct IntegralProbe {
  double value = 0.0;
  bool converged = false;
  bool finite = false;
};

IntegralProbe probe_integral(const std::function<double(double)>& g, double radius)
{
  IntegralProbe probe;
  try {
    const QuadratureResult res = integrate_adaptive(g, -radius, radius, kVerifyQuadTol);
    probe.value = res.value;
    probe.converged = res.converged;
    probe.finite = std::isfinite(res.value);
  } catch (const Error&) {
    probe.finite = false;
  }
  return probe;
}

} // namespace

Kernel gaussian_kernel()
{
  Kernel k;
  k.name = "gaussian";
  k.eval = gauss;
  k.eval_second_derivative = gauss_dd;
  k.second_moment = 1.0;
  k.square_integral = 0.5 / std::sqrt(std::numbers::pi); // 1/(2*sqrt(pi))
  k.effective_support_radius = 8.0;
  return k;
}

Kernel kernel_by_name(std::string_view name)
{
  if (name == "gaussian")
    return gaussian_kernel();
  throw InvalidArgumentError("unknown kernel '" + std::string(name) +
                             "' (known: gaussian)");
}

std::vector<std::string> known_kernel_names() { return { "gaussian" }; }

bool HypothesisReport::all_checkable_passed() const
{
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) {
    return c.status != HypothesisStatus::fail;
  });
}

const HypothesisCheck* HypothesisReport::find(std::string_view id, std::string_view subject) const
{
  for (const auto& c : checks) {
    if (c.id == id && c.subject == subject)
      return &c;
  }
  return nullptr;
}

HypothesisReport verify_hypotheses(const Kernel& kernel, double tol)
{
  if (tol <= 0.0)
    throw InvalidArgumentError("verify_hypotheses: tol must be positive");

  HypothesisReport report;
  report.kernel_name = kernel.name;
  report.tolerance = tol;

  const double radius = std::isfinite(kernel.effective_support_radius) &&
                            kernel.effective_support_radius > 0.0
                          ? kernel.effective_support_radius
                          : 8.0;

  struct Subject {
    const char* label;
    const std::function<double(double)>& f;
    double integral_target; // H2: 1 for K, 0 for K'' (K'' cannot integrate to 1)
  };
  const Subject subjects[2] = {
    { "K", kernel.eval, 1.0 },
    { "K''", kernel.eval_second_derivative, 0.0 },
  };

  // H1: bounded sup on a dense grid.
  for (const auto& s : subjects) {
    HypothesisCheck c;
    c.id = "H1";
    c.subject = s.label;
    const double sup = sup_on_grid(s.f, radius, 8000);
    c.measurements.emplace_back("sup_abs", sup);
    c.status = std::isfinite(sup) ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = c.status == HypothesisStatus::pass ? "supremum finite on dense grid"
                                                  : "supremum not finite";
    report.checks.push_back(std::move(c));
  }

  // H2: integral equals 1 for K; for K'' the same hypothesis is read as
  // "integral vanishes", since a second derivative integrates to 0.
  for (const auto& s : subjects) {
    HypothesisCheck c;
    c.id = "H2";
    c.subject = s.label;
    const IntegralProbe probe = probe_integral(s.f, radius);
    c.measurements.emplace_back("integral", probe.value);
    const double deviation = std::abs(probe.value - s.integral_target);
    c.measurements.emplace_back("deviation", deviation);
    const bool ok = probe.converged && probe.finite && deviation <= tol;
    c.status = ok ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = std::string("integral target ") + (s.integral_target == 1.0 ? "1" : "0 (second derivative)");
    report.checks.push_back(std::move(c));
  }

  // H3: |u f(u)| -> 0 beyond the effective support.
  for (const auto& s : subjects) {
    HypothesisCheck c;
    c.id = "H3";
    c.subject = s.label;
    const double worst = tail_sup_u_times(s.f, radius);
    c.measurements.emplace_back("max_abs_u_times_value", worst);
    c.status = worst < 1e-10 ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = "max |u f(u)| over |u| in [R, 2R]";
    report.checks.push_back(std::move(c));
  }

  // H4: bounded variation; total variation on a refining grid must converge.
  for (const auto& s : subjects) {
    HypothesisCheck c;
    c.id = "H4";
    c.subject = s.label;
    const double tv_coarse = total_variation_on_grid(s.f, radius, 40000);
    const double tv_fine = total_variation_on_grid(s.f, radius, 80000);
    c.measurements.emplace_back("total_variation", tv_fine);
    c.measurements.emplace_back("refinement_delta", std::abs(tv_fine - tv_coarse));
    const bool ok = std::isfinite(tv_fine) &&
                    std::abs(tv_fine - tv_coarse) <= std::max(tol, 1e-6 * std::max(1.0, tv_fine));
    c.status = ok ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = "grid total variation stable under refinement";
    report.checks.push_back(std::move(c));
  }

  // H5: int |u f(u)| du and int u^2 f(u) du finite.
  for (const auto& s : subjects) {
    HypothesisCheck c;
    c.id = "H5";
    c.subject = s.label;
    const IntegralProbe abs_first =
      probe_integral([&](double u) { return std::abs(u * s.f(u)); }, radius);
    const IntegralProbe second =
      probe_integral([&](double u) { return u * u * s.f(u); }, radius);
    c.measurements.emplace_back("integral_abs_u_f", abs_first.value);
    c.measurements.emplace_back("integral_u2_f", second.value);
    const bool ok = abs_first.finite && second.finite && abs_first.converged && second.converged;
    c.status = ok ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = "first absolute and second moments finite";
    report.checks.push_back(std::move(c));
  }

  // H6: existence of a Lipschitz majorant is not decidable numerically.
  {
    HypothesisCheck c;
    c.id = "H6";
    c.subject = "K and K''";
    c.status = HypothesisStatus::informational;
    c.detail = "not machine-checkable (Lipschitz-majorant existence)";
    report.checks.push_back(std::move(c));
  }

  // Stored moments must agree with quadrature of eval.
  {
    HypothesisCheck c;
    c.id = "moments";
    c.subject = "K";
    const IntegralProbe mu2 =
      probe_integral([&](double u) { return u * u * kernel.eval(u); }, radius);
    const IntegralProbe rk =
      probe_integral([&](double u) { const double v = kernel.eval(u); return v * v; }, radius);
    c.measurements.emplace_back("second_moment_quadrature", mu2.value);
    c.measurements.emplace_back("square_integral_quadrature", rk.value);
    c.measurements.emplace_back("second_moment_stored", kernel.second_moment);
    c.measurements.emplace_back("square_integral_stored", kernel.square_integral);
    const bool ok = mu2.finite && rk.finite &&
                    std::abs(mu2.value - kernel.second_moment) <= 1e-8 &&
                    std::abs(rk.value - kernel.square_integral) <= 1e-8;
    c.status = ok ? HypothesisStatus::pass : HypothesisStatus::fail;
    c.detail = "stored second_moment and square_integral vs quadrature";
    report.checks.push_back(std::move(c));
  }

  return report;
}

} // namespace fgt
