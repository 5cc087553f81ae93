#include <cmath>

#include "doctest.h"
#include "lorenzlab/analytic.hpp"
#include "lorenzlab/error.hpp"
#include "lorenzlab/initial.hpp"
#include "lorenzlab/transforms.hpp"

using namespace lorenzlab;

namespace {

DensityField uniform_half_on_0_2(std::size_t n) {
  return {SpatialGrid::uniform(0.0, 2.0, n, Domain::real_line), std::vector<double>(n, 0.5), 0.0};
}

DensityField gaussian(double mean, double sd, double lo, double hi, std::size_t n) {
  const auto g = SpatialGrid::uniform(lo, hi, n, Domain::real_line);
  return make_initial_density(GaussianInit{mean, sd}, g);
}

}  // namespace

TEST_CASE("cdf of simple densities") {
  const auto g = SpatialGrid::uniform(0.0, 1.0, 11, Domain::real_line);
  const auto F = cdf_from_density({g, std::vector<double>(11, 1.0), 0.0});
  for (std::size_t i = 0; i < 11; ++i) CHECK(F.values[i] == doctest::Approx(g[i]).epsilon(1e-14));

  const auto G = cdf_from_density(gaussian(0.0, 1.0, -8.0, 8.0, 401));
  CHECK(G.values[200] == doctest::Approx(0.5).epsilon(1e-12));

  const auto U = cdf_from_density(uniform_half_on_0_2(201));
  CHECK(U.values[100] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("incomplete first moment") {
  const auto g = SpatialGrid::uniform(0.0, 1.0, 11, Domain::real_line);
  const auto L = incomplete_first_moment({g, std::vector<double>(11, 1.0), 0.0});
  for (std::size_t i = 0; i < 11; ++i) CHECK(L[i] == doctest::Approx(g[i] * g[i] / 2.0).epsilon(1e-14));
  CHECK(L.back() == doctest::Approx(0.5));

  CHECK(std::abs(incomplete_first_moment(gaussian(0.0, 1.0, -8.0, 8.0, 401)).back()) < 1e-12);
  CHECK(incomplete_first_moment(uniform_half_on_0_2(101)).back() == doctest::Approx(1.0));
}

TEST_CASE("uniform density maps to f^2") {
  const auto c = lorenz_from_density(uniform_half_on_0_2(201), 101);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(c.f(i) * c.f(i)).epsilon(1e-12));
  CHECK(c[0] == 0.0);
  CHECK(c.right_boundary() == doctest::Approx(1.0));
}

TEST_CASE("narrow spike approaches the linear curve a f") {
  double prev = 1.0;
  for (double w : {0.2, 0.05, 0.01}) {
    const auto d = gaussian(1.5, w, 1.5 - 12 * w, 1.5 + 12 * w, 801);
    const auto c = lorenz_from_density(d, 65);
    double err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(c[i] - 1.5 * c.f(i)));
    CHECK(err < prev);
    CHECK(err <= 0.4 * w + 1e-6);  // bump height is w phi(0) ~ 0.4 w
    prev = err;
  }
}

TEST_CASE("lorenz_from_density endpoints and convexity") {
  const auto d = make_initial_density(LognormalInit{2.0, 0.6},
                                      SpatialGrid::uniform(1e-3, 30.0, 1500, Domain::positive_half_line));
  const auto c = lorenz_from_density(d, 257);
  CHECK(c[0] == 0.0);
  CHECK(c.right_boundary() == doctest::Approx(d.mean()).epsilon(1e-12));
  CHECK(c.convexity_margin() > 0.0);
}

TEST_CASE("zero-density plateau is collapsed with a warning") {
  // Two separated bumps; the gap between them has exactly zero density.
  const auto g = SpatialGrid::uniform(0.0, 4.0, 401, Domain::real_line);
  std::vector<double> v(401, 0.0);
  for (std::size_t i = 0; i < 401; ++i) {
    const double x = g[i];
    if (x > 0.5 && x < 1.5) v[i] = 1.0 - std::abs(x - 1.0) * 2.0;
    if (x > 2.5 && x < 3.5) v[i] = 1.0 - std::abs(x - 3.0) * 2.0;
  }
  TransformDiagnostics diag;
  const auto c = lorenz_from_density(DensityField{g, v, 0.0}.normalized(), 129, {}, &diag);
  CHECK(diag.collapsed_nodes > 0);
  CHECK(diag.warnings.size() == 1);
  CHECK(c.convexity_margin() >= -1e-10);
  CHECK(c.right_boundary() == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("density_from_lorenz of f^2 is uniform on [0,2]") {
  std::vector<double> v(101);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(fgrid_node(i, 101), 2);
  const auto r = density_from_lorenz(LorenzCurve(v, 0.0));
  const auto& x = r.density.grid;
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(x[k] == doctest::Approx(2.0 * fgrid_node(k + 1, 101)).epsilon(1e-12));
    CHECK(r.density.values[k] == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK(r.covered_mass == doctest::Approx(0.98));
  CHECK(std::abs(r.mass_error) < 1e-10);
}

TEST_CASE("density_from_lorenz rejects non-convex curves") {
  std::vector<double> lin(33);
  for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = 2.0 * fgrid_node(i, 33);
  CHECK_THROWS_AS(density_from_lorenz(LorenzCurve(lin, 0.0)), ValidationError);
  lin[10] += 0.01;
  CHECK_THROWS_AS(density_from_lorenz(LorenzCurve(lin, 0.0)), ValidationError);
}

TEST_CASE("Gaussian round trip recovers the density") {
  const auto d = gaussian(0.0, 1.0, -8.0, 8.0, 1024);
  const auto c = lorenz_from_density(d, 1024);
  const auto r = density_from_lorenz(c);
  const auto x = r.density.grid.nodes();
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (std::abs(x[k]) > 2.0) continue;
    worst = std::max(worst, std::abs(r.density.values[k] - analytic::normal_pdf(x[k])));
  }
  CHECK(worst < 1e-3);
}

TEST_CASE("quantiles invert the CDF") {
  const auto d = uniform_half_on_0_2(51);
  const std::vector<double> p{0.0, 0.1, 0.5, 0.99, 1.0};
  const auto q = quantiles(d, p);
  for (std::size_t k = 0; k < p.size(); ++k) CHECK(q[k] == doctest::Approx(2.0 * p[k]).epsilon(1e-12));

  const auto gd = gaussian(0.0, 1.0, -8.0, 8.0, 2001);
  const std::vector<double> pg{0.025, 0.5, 0.975};
  const auto qg = quantiles(gd, pg);
  CHECK(qg[0] == doctest::Approx(-1.959963984540054).epsilon(1e-4));
  CHECK(std::abs(qg[1]) < 1e-10);
  CHECK(qg[2] == doctest::Approx(1.959963984540054).epsilon(1e-4));
  CHECK_THROWS_AS(quantiles(gd, std::vector<double>{1.5}), ValidationError);
}

TEST_CASE("normalize_wealth gives unit mass and mean") {
  const auto d = make_initial_density(LognormalInit{3.0, 0.4},
                                      SpatialGrid::uniform(1e-3, 25.0, 2000, Domain::positive_half_line));
  const auto n = normalize_wealth(d);
  CHECK(n.mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.mean() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sample_density is linear inside and zero outside") {
  const auto d = uniform_half_on_0_2(5);
  const auto s = sample_density(d, std::vector<double>{-1.0, 0.3, 2.5});
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(s[2] == 0.0);
}
