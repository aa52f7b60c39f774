#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fgt/distribution.hpp"
#include "fgt/errors.hpp"
#include "fgt/quadrature.hpp"

using namespace fgt;

namespace {

// Kolmogorov-Smirnov statistic of a sample against a reference cdf.
double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf)
{
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max(f - static_cast<double>(i) / n,
                             static_cast<double>(i + 1) / n - f));
  }
  return d;
}

} // namespace

TEST_CASE("uniform distribution basics")
{
  const IncomeDistribution u = uniform_01();
  CHECK(u.cdf(0.3) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(u.inverse_cdf(0.25) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(u.pdf(2.0) == 0.0);
  CHECK(u.pdf(-0.1) == 0.0);
  CHECK(u.pdf(0.5) == 1.0);
  CHECK_THROWS_AS(u.inverse_cdf(1.5), InvalidArgumentError);
}

TEST_CASE("truncated pareto parameter validation")
{
  CHECK_THROWS_AS(truncated_pareto(0.0, 0.2, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(truncated_pareto(0.5, 0.2, 0.5), InvalidParameterError);
  CHECK_THROWS_AS(truncated_pareto(0.02, 0.0, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(truncated_pareto(0.02, -1.0, 1.0), InvalidParameterError);
}

TEST_CASE("truncated pareto cdf endpoints and closed form")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  CHECK(p.cdf(0.02) == 0.0);
  CHECK(p.cdf(1.0) == 1.0);
  CHECK(p.cdf(0.5) == doctest::Approx(0.87469846698421637).epsilon(1e-12));
  CHECK(p.pdf(0.01) == 0.0);
  CHECK(p.pdf(1.5) == 0.0);
}

TEST_CASE("distribution bundle invariants")
{
  for (const IncomeDistribution& d : { uniform_01(), truncated_pareto(0.02, 0.2, 1.0),
                                       truncated_pareto(0.1, 1.5, 2.0) }) {
    CAPTURE(d.name);
    // pdf integrates to one over the support
    const double mass =
      integrate_adaptive(d.pdf, d.support.lower, d.support.upper, 1e-12).value;
    CHECK(std::abs(mass - 1.0) < 1e-8);
    // cdf endpoints
    CHECK(std::abs(d.cdf(d.support.lower)) < 1e-10);
    CHECK(std::abs(d.cdf(d.support.upper) - 1.0) < 1e-10);
    // cdf nondecreasing on a grid; inverse_cdf round-trips in the interior
    double prev = 0.0;
    for (int i = 1; i < 60; ++i) {
      const double x = d.support.lower +
                       (d.support.upper - d.support.lower) * static_cast<double>(i) / 60.0;
      const double f = d.cdf(x);
      CHECK(f >= prev);
      prev = f;
      CHECK(std::abs(d.inverse_cdf(f) - x) < 1e-8);
    }
  }
}

TEST_CASE("pareto cdf cross-checked against a Monte Carlo cdf")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  const std::size_t n = 1'000'000;
  const IncomeSample sample = draw_sample(p, n, 2024);
  std::size_t below = 0;
  for (double x : sample.values())
    below += x <= 0.5;
  const double empirical = static_cast<double>(below) / static_cast<double>(n);
  CHECK(std::abs(empirical - p.cdf(0.5)) < 3e-3);
}

TEST_CASE("draw_sample is deterministic in its seed")
{
  const IncomeDistribution u = uniform_01();
  const IncomeSample a = draw_sample(u, 5, 7);
  const IncomeSample b = draw_sample(u, 5, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.values()[i] == b.values()[i]);
  const IncomeSample c = draw_sample(u, 5, 8);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    any_different |= a.values()[i] != c.values()[i];
  CHECK(any_different);
}

TEST_CASE("draw_sample stays inside the support")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  const IncomeSample sample = draw_sample(p, 100'000, 3);
  for (double x : sample.values()) {
    REQUIRE(x >= 0.02);
    REQUIRE(x <= 1.0);
  }
}

TEST_CASE("uniform draws pass a KS check at n = 1e5")
{
  const IncomeDistribution u = uniform_01();
  const IncomeSample sample = draw_sample(u, 100'000, 1);
  const double d = ks_statistic({ sample.values().begin(), sample.values().end() }, u.cdf);
  CHECK(d < 0.006);
}

TEST_CASE("sample moments match distribution moments")
{
  for (const IncomeDistribution& d : { uniform_01(), truncated_pareto(0.02, 0.2, 1.0) }) {
    CAPTURE(d.name);
    const double mean = integrate_adaptive([&](double x) { return x * d.pdf(x); },
                                           d.support.lower, d.support.upper, 1e-12)
                          .value;
    const double second = integrate_adaptive([&](double x) { return x * x * d.pdf(x); },
                                             d.support.lower, d.support.upper, 1e-12)
                            .value;
    const double sd = std::sqrt(second - mean * mean);
    const std::size_t n = 100'000;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const IncomeSample sample = draw_sample(d, n, seed);
      double sum = 0.0;
      for (double x : sample.values())
        sum += x;
      const double sample_mean = sum / static_cast<double>(n);
      CHECK(std::abs(sample_mean - mean) < 4.0 * sd / std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("true_fgt closed form for the uniform distribution")
{
  const IncomeDistribution u = uniform_01();
  for (double z : { 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9 })
    for (double alpha : { 0.0, 1.0, 2.0, 3.0 })
      CHECK(std::abs(true_fgt(u, z, alpha, 1e-10) - z / (alpha + 1.0)) < 1e-9);
}

TEST_CASE("true_fgt reduces to the cdf at alpha = 0")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  for (double z : { 0.05, 0.1, 0.4, 0.75, 1.0 })
    CHECK(std::abs(true_fgt(p, z, 0.0, 1e-10) - p.cdf(z)) < 1e-9);
}

TEST_CASE("true_fgt against a Monte Carlo oracle on the pareto")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  const double z = 0.5;
  const std::size_t n = 10'000'000;
  SplitMix64 gen(17);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = p.inverse_cdf(gen.next_double());
    const double base = (z - x) / z;
    const double y = base > 0.0 ? base * base : 0.0;
    sum += y;
    sum_sq += y * y;
  }
  const double mc_mean = sum / static_cast<double>(n);
  const double mc_var = sum_sq / static_cast<double>(n) - mc_mean * mc_mean;
  const double se = std::sqrt(mc_var / static_cast<double>(n));
  const double exact = true_fgt(p, z, 2.0, 1e-10);
  CHECK(std::abs(exact - mc_mean) < 3.0 * se);
  CHECK(exact == doctest::Approx(0.53479614371595809).epsilon(1e-8));
}

TEST_CASE("true_fgt monotonicity and range")
{
  const IncomeDistribution p = truncated_pareto(0.02, 0.2, 1.0);
  double prev_z = 0.0;
  for (double z : { 0.1, 0.3, 0.5, 0.7, 0.9 }) {
    const double v = true_fgt(p, z, 1.0, 1e-10);
    CHECK(v >= prev_z - 1e-12); // nondecreasing in z
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    prev_z = v;
  }
  double prev_a = 1.0;
  for (double alpha : { 0.0, 0.5, 1.0, 2.0, 4.0 }) {
    const double v = true_fgt(p, 0.5, alpha, 1e-10);
    CHECK(v <= prev_a + 1e-12); // nonincreasing in alpha
    prev_a = v;
  }
}

TEST_CASE("true_fgt edge and error cases")
{
  const IncomeDistribution u = uniform_01();
  CHECK(true_fgt(u, 0.0, 1.0) == 0.0);
  CHECK(true_fgt(u, -2.0, 1.0) == 0.0);
  CHECK_THROWS_AS(true_fgt(u, 0.5, -1.0), InvalidArgumentError);
  CHECK_THROWS_AS(true_fgt(u, 0.5, 1.0, 0.0), InvalidArgumentError);
  // below the pareto support the index is exactly zero
  const IncomeDistribution p = truncated_pareto(0.2, 0.5, 1.0);
  CHECK(true_fgt(p, 0.1, 1.0) == 0.0);
}

TEST_CASE("quadrature failure carries its best estimate")
{
  // An oscillatory integrand with an unreachable tolerance exhausts the
  // refinement depth budget.
  const auto nasty = [](double x) { return std::sin(1.0 / (x + 1e-8)); };
  CHECK_THROWS_AS(integrate_or_throw(nasty, 0.0, 1.0, 1e-300, 8), NumericalFailureError);
  try {
    integrate_or_throw(nasty, 0.0, 1.0, 1e-300, 8);
  } catch (const NumericalFailureError& e) {
    CHECK(std::isfinite(e.best_estimate()));
  }
}

TEST_CASE("draw_sample rejects n = 0")
{
  CHECK_THROWS_AS(draw_sample(uniform_01(), 0, 1), InvalidArgumentError);
}
