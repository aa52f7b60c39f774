#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "fgt/errors.hpp"
#include "fgt/summation.hpp"

namespace fgt {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  int max_depth_reached = 0;
};

namespace detail {

// Gauss-Kronrod 7/15 pair (QUADPACK nodes and weights).
struct Gk15 {
  static constexpr int n = 8;
  static constexpr double node[n] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
  };
  static constexpr double wk[n] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
  };
  // Gauss weights sit on the odd-index nodes.
  static constexpr double wg[n] = {
    0.0, 0.129484966168869693270611432679082,
    0.0, 0.279705391489276667901467771423780,
    0.0, 0.381830050505118944950369775488975,
    0.0, 0.417959183673469387755102040816327,
  };
};

template <class F>
std::pair<double, double> gk15_panel(const F& f, double a, double b)
{
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < Gk15::n; ++i) {
    const double dx = half * Gk15::node[i];
    const double y = (i == Gk15::n - 1) ? f(mid) : f(mid - dx) + f(mid + dx);
    kronrod += Gk15::wk[i] * y;
    gauss += Gk15::wg[i] * y;
  }
  kronrod *= half;
  gauss *= half;
  return { kronrod, std::abs(kronrod - gauss) };
}

template <class F>
void integrate_recurse(const F& f, double a, double b, double tol, int depth, int max_depth,
                       NeumaierSum& total, NeumaierSum& err_total, bool& converged, int& deepest)
{
  const auto [value, err] = gk15_panel(f, a, b);
  deepest = std::max(deepest, depth);
  const double width = b - a;
  const double rounding_floor = 16.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  if (err <= tol || err <= rounding_floor || width <= std::abs(a) * 1e-15) {
    total.add(value);
    err_total.add(err);
    return;
  }
  if (depth >= max_depth) {
    total.add(value);
    err_total.add(err);
    converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_recurse(f, a, mid, 0.5 * tol, depth + 1, max_depth, total, err_total, converged, deepest);
  integrate_recurse(f, mid, b, 0.5 * tol, depth + 1, max_depth, total, err_total, converged, deepest);
}

} // namespace detail

// Adaptive quadrature: recursive bisection with a fixed GK15 rule per panel.
// abs_tol is an absolute tolerance on the whole interval; each bisection
// halves the local budget.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                    int max_depth = 60)
{
  if (abs_tol <= 0.0)
    throw InvalidArgumentError("quadrature tolerance must be positive");
  QuadratureResult res;
  if (a == b)
    return res;
  NeumaierSum total;
  NeumaierSum err_total;
  bool converged = true;
  int deepest = 0;
  detail::integrate_recurse(f, a, b, abs_tol, 0, max_depth, total, err_total, converged, deepest);
  res.value = total.value();
  res.error_estimate = err_total.value();
  res.converged = converged;
  res.max_depth_reached = deepest;
  return res;
}

// Same, but throws NumericalFailureError (carrying the best estimate) when the
// tolerance cannot be met within the refinement budget.
template <class F>
double integrate_or_throw(const F& f, double a, double b, double abs_tol, int max_depth = 60,
                          const std::string& what = "adaptive quadrature did not converge")
{
  const QuadratureResult res = integrate_adaptive(f, a, b, abs_tol, max_depth);
  if (!res.converged)
    throw NumericalFailureError(what, res.value);
  return res.value;
}

} // namespace fgt
