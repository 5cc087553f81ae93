#include <cmath>
#include <numeric>

#include "doctest.h"
#include "lorenzlab/error.hpp"
#include "lorenzlab/fields.hpp"
#include "lorenzlab/grid.hpp"
#include "lorenzlab/interpolation.hpp"
#include "lorenzlab/quadrature.hpp"

using namespace lorenzlab;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(SpatialGrid({0.0, 1.0}, Domain::real_line), ValidationError);
  CHECK_THROWS_AS(SpatialGrid({0.0, 1.0, 1.0}, Domain::real_line), ValidationError);
  CHECK_THROWS_AS(SpatialGrid({0.0, 1.0, 2.0}, Domain::positive_half_line), ValidationError);
  CHECK_NOTHROW(SpatialGrid({-1.0, 0.0, 2.0}, Domain::real_line));

  const auto g = SpatialGrid::uniform(-2.0, 2.0, 5, Domain::real_line);
  CHECK(g.is_uniform());
  CHECK(g.spacing() == doctest::Approx(1.0));
  CHECK(g[2] == 0.0);
  CHECK_THROWS_AS(SpatialGrid({0.0, 1.0, 3.0}, Domain::real_line).spacing(), ValidationError);

  CHECK(domain_from_string("positive") == Domain::positive_half_line);
  CHECK(domain_from_string(to_string(Domain::real_line)) == Domain::real_line);
  CHECK_THROWS_AS(domain_from_string("complex"), ValidationError);
}

TEST_CASE("density validation") {
  const auto g = SpatialGrid::uniform(0.0, 2.0, 201, Domain::real_line);
  DensityField d{g, std::vector<double>(201, 0.5), 0.0};
  CHECK(d.mass() == doctest::Approx(1.0));
  CHECK(d.mean() == doctest::Approx(1.0));
  CHECK(d.variance() == doctest::Approx(1.0 / 3.0));
  // Uniform has nonzero ends, so the tail check must fail but mass passes.
  CHECK_THROWS_AS(validate(d), ValidationError);
  CHECK_NOTHROW(validate(d, {}, {.check_mass = true, .check_tails = false}));

  d.values[10] = -1e-3;
  CHECK_THROWS_AS(validate(d, {}, {.check_mass = false, .check_tails = false}), ValidationError);
  d.values[10] = 0.5;
  for (double& v : d.values) v *= 2.0;
  CHECK_THROWS_AS(validate(d, {}, {.check_mass = true, .check_tails = false}), ValidationError);
  CHECK(d.normalized().mass() == doctest::Approx(1.0));
}

TEST_CASE("Lorenz curve invariants") {
  CHECK_THROWS_AS(LorenzCurve({0.0, 1.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(LorenzCurve({0.1, 0.5, 1.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(LorenzCurve({0.0, NAN, 1.0}, 0.0), ValidationError);

  std::vector<double> v(11);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * std::pow(fgrid_node(i, 11), 2);
  const LorenzCurve c(v, 3.0);
  CHECK(c.right_boundary() == 2.0);
  CHECK(c.spacing() == doctest::Approx(0.1));
  CHECK(c.convexity_margin() == doctest::Approx(2.0 * 2.0 * 0.01));
  CHECK(c.normalized().right_boundary() == doctest::Approx(1.0));
  CHECK(c.with_time(5.0).time() == 5.0);
}

TEST_CASE("metric series columns stay aligned") {
  MetricSeries s;
  s.push({0.0, 0.1, 0.2, 1.0, 0.5, 0.0, 1e-3});
  s.push({1.0, 0.2, 0.3, 1.0, 0.6, 1e-9, 2e-3});
  CHECK(s.size() == 2);
  CHECK(s.gini.size() == 2);
  CHECK(s.at(1).hoover == 0.3);
  CHECK(s.at(1).convexity_margin == 2e-3);
}

TEST_CASE("trapezoid rules") {
  std::vector<double> x{0.0, 0.5, 1.5, 2.0};
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = 3.0 * x[i] + 1.0;
  CHECK(quad::trapezoid(y, x) == doctest::Approx(8.0));
  const auto cum = quad::cumulative_trapezoid(y, x);
  CHECK(cum.front() == 0.0);
  CHECK(cum.back() == doctest::Approx(8.0));

  const auto w = quad::trapezoid_weights(x);
  CHECK(std::inner_product(w.begin(), w.end(), y.begin(), 0.0) == doctest::Approx(8.0));
  CHECK(quad::trapezoid_uniform(std::vector<double>{1.0, 1.0, 1.0}, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("piecewise-linear moments are exact for linear densities") {
  // rho = x on [0,1]: int x^2 = 1/3, int x^3 = 1/4, on any grid.
  std::vector<double> x{0.0, 0.1, 0.35, 0.6, 1.0};
  std::vector<double> rho = x;
  CHECK(quad::linear_first_moment(rho, x) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(quad::linear_second_moment(rho, x) == doctest::Approx(0.25).epsilon(1e-14));
  const auto cum = quad::cumulative_linear_first_moment(rho, x);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(cum[i] == doctest::Approx(std::pow(x[i], 3) / 3.0).epsilon(1e-14));
}

TEST_CASE("Hermite interpolant reproduces cubics") {
  auto p = [](double x) { return x * x * x - 2.0 * x + 1.0; };
  auto dp = [](double x) { return 3.0 * x * x - 2.0; };
  std::vector<double> k{-1.0, 0.0, 0.4, 2.0}, v, s;
  for (double x : k) {
    v.push_back(p(x));
    s.push_back(dp(x));
  }
  const HermiteInterpolant h(k, v, s);
  for (double x : {-1.0, -0.3, 0.2, 0.4, 1.1, 2.0}) CHECK(h(x) == doctest::Approx(p(x)).epsilon(1e-13));
  const std::vector<double> xs{-0.9, 0.1, 0.5, 1.9};
  const auto ys = h.evaluate_sorted(xs);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(ys[i] == doctest::Approx(p(xs[i])).epsilon(1e-13));
  CHECK_THROWS_AS(HermiteInterpolant({0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}), ValidationError);
}

TEST_CASE("linear interpolation clamps or uses the outside value") {
  const std::vector<double> x{0.0, 1.0, 2.0}, y{0.0, 2.0, 3.0};
  CHECK(interp_linear(x, y, 0.5) == doctest::Approx(1.0));
  CHECK(interp_linear(x, y, 1.5) == doctest::Approx(2.5));
  CHECK(interp_linear(x, y, -1.0) == 0.0);
  CHECK(interp_linear(x, y, 5.0) == 3.0);
  CHECK(interp_linear(x, y, 5.0, -7.0) == -7.0);
}
