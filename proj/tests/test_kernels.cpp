#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lorenzlab/error.hpp"
#include "lorenzlab/kernels.hpp"

using namespace lorenzlab;

namespace {

// Above the OpenMP threshold so the parallel branch actually runs.
constexpr std::size_t kBig = 3000;

std::vector<double> uniform_draws(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

std::vector<double> brute_min_square(const std::vector<double>& p, const std::vector<double>& m) {
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double q = std::min(p[i], p[j]);
      out[i] += m[j] * q * q;
    }
  return out;
}

}  // namespace

TEST_CASE("kernel names round trip") {
  for (auto k : {Kernel::reference, Kernel::parallel, Kernel::scan})
    CHECK(kernel_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(kernel_from_string("gpu"), ValidationError);
}

TEST_CASE("min_square_moment: parallel is bit-identical, scan agrees") {
  auto p = uniform_draws(kBig, 0.0, 5.0, 1);
  std::sort(p.begin(), p.end());
  const auto m = uniform_draws(kBig, 0.0, 1.0, 2);

  const auto ref = kernels::min_square_moment(p, m, Kernel::reference);
  const auto par = kernels::min_square_moment(p, m, Kernel::parallel);
  const auto scan = kernels::min_square_moment(p, m, Kernel::scan);
  const auto brute = brute_min_square(p, m);
  REQUIRE(ref.size() == kBig);
  bool identical = true;
  for (std::size_t i = 0; i < kBig; ++i) {
    identical = identical && ref[i] == par[i];
    CHECK(ref[i] == doctest::Approx(brute[i]).epsilon(1e-12));
    CHECK(scan[i] == doctest::Approx(ref[i]).epsilon(1e-11));
  }
  CHECK(identical);
}

TEST_CASE("scan falls back on unsorted points") {
  auto p = uniform_draws(200, 0.0, 5.0, 3);
  const auto m = uniform_draws(200, 0.0, 1.0, 4);
  REQUIRE_FALSE(kernels::is_sorted_ascending(p));
  const auto ref = kernels::min_square_moment(p, m, Kernel::reference);
  const auto scan = kernels::min_square_moment(p, m, Kernel::scan);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(scan[i] == ref[i]);
  CHECK(kernels::min_pair_sum(p, m, Kernel::scan) == kernels::min_pair_sum(p, m, Kernel::reference));
}

TEST_CASE("min_pair_sum against a direct double loop") {
  auto p = uniform_draws(kBig, 0.1, 3.0, 5);
  std::sort(p.begin(), p.end());
  const auto m = uniform_draws(kBig, 0.0, 1.0, 6);
  double brute = 0.0;
  for (std::size_t i = 0; i < kBig; ++i)
    for (std::size_t j = 0; j < kBig; ++j) brute += m[i] * m[j] * std::min(p[i], p[j]);
  const double ref = kernels::min_pair_sum(p, m, Kernel::reference);
  CHECK(ref == doctest::Approx(brute).epsilon(1e-12));
  CHECK(kernels::min_pair_sum(p, m, Kernel::parallel) == ref);
  CHECK(kernels::min_pair_sum(p, m, Kernel::scan) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("fpe_update: parallel matches reference bit for bit") {
  const auto rho = uniform_draws(kBig, 0.0, 1.0, 7);
  const auto drift = uniform_draws(kBig, -1.0, 1.0, 8);
  const auto diff = uniform_draws(kBig, 0.5, 1.0, 9);
  std::vector<double> a(kBig), b(kBig);
  kernels::fpe_update(rho, drift, diff, 0.01, 1e-5, a, Kernel::reference);
  kernels::fpe_update(rho, drift, diff, 0.01, 1e-5, b, Kernel::parallel);
  CHECK(a == b);
  CHECK(a.front() == 0.0);
  CHECK(a.back() == 0.0);
}

TEST_CASE("fpe_update conserves the interior sum for pure diffusion") {
  // Flux form: with zero boundary values the discrete mass changes only
  // through the boundary fluxes.
  std::vector<double> rho(101, 0.0);
  for (std::size_t i = 30; i < 70; ++i) rho[i] = 1.0;
  std::vector<double> drift(101, 0.0), diff(101, 1.0), out(101);
  kernels::fpe_update(rho, drift, diff, 0.1, 1e-3, out, Kernel::reference);
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t i = 0; i < 101; ++i) {
    s0 += rho[i];
    s1 += out[i];
  }
  CHECK(s1 == doctest::Approx(s0).epsilon(1e-14));
}

TEST_CASE("lorenz_update: parallel matches reference; ends copied") {
  const auto L = uniform_draws(kBig, 0.0, 1.0, 10);
  const auto D = uniform_draws(kBig, 0.1, 1.0, 11);
  const auto c = uniform_draws(kBig, 0.5, 2.0, 12);
  const auto s = uniform_draws(kBig, -0.1, 0.1, 13);
  std::vector<double> a(kBig), b(kBig);
  kernels::lorenz_update(L, D, c, s, 1e-4, a, Kernel::reference);
  kernels::lorenz_update(L, D, c, s, 1e-4, b, Kernel::parallel);
  CHECK(a == b);
  CHECK(a.front() == L.front());
  CHECK(a.back() == L.back());
  CHECK(a[5] == doctest::Approx(L[5] + 1e-4 * (-D[5] / c[5] + s[5])));
}

TEST_CASE("kernels reject mismatched sizes") {
  std::vector<double> a(10, 1.0), b(9, 1.0), out(10);
  CHECK_THROWS_AS(kernels::min_square_moment(a, b, Kernel::reference), ValidationError);
  CHECK_THROWS_AS(kernels::lorenz_update(a, a, b, a, 0.1, out, Kernel::reference), ValidationError);
}
