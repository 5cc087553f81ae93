#include "lorenzlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/interpolation.hpp"
#include "lorenzlab/quadrature.hpp"

namespace lorenzlab {

namespace {

double checked_mass(const DensityField& density) {
  validate(density, {}, {.check_mass = false, .check_tails = false});
  const double m = density.mass();
  if (!(m > 0.0)) throw ValidationError("density has no positive mass");
  return m;
}

}  // namespace

SampledCDF cdf_from_density(const DensityField& density, const Tolerances& tol) {
  const double m = checked_mass(density);
  auto F = quad::cumulative_trapezoid(density.values, density.grid.nodes());
  for (double& v : F) v /= m;
  for (std::size_t i = 1; i < F.size(); ++i)
    if (F[i] < F[i - 1])
      throw ValidationError("CDF decreases at node " + std::to_string(i) +
                            "; density input is corrupted");
  if (std::abs(F.back() - 1.0) > tol.mass) throw ValidationError("CDF does not reach 1");
  return {density.grid, std::move(F), density.time};
}

std::vector<double> incomplete_first_moment(const DensityField& density, const Tolerances&) {
  const double m = checked_mass(density);
  auto L = quad::cumulative_linear_first_moment(density.values, density.grid.nodes());
  for (double& v : L) v /= m;
  return L;
}

LorenzCurve lorenz_from_density(const DensityField& density, std::size_t f_count,
                                const Tolerances& tol, TransformDiagnostics* diag) {
  if (f_count < 3) throw ValidationError("f_count must be >= 3");
  const SampledCDF cdf = cdf_from_density(density, tol);
  const std::vector<double> L = incomplete_first_moment(density, tol);
  const auto x = density.grid.nodes();

  // Keep the first node of every run of (numerically) equal CDF values; the
  // node that first reaches the top carries the total.
  std::vector<double> knots, values, slopes;
  knots.reserve(x.size());
  values.reserve(x.size());
  slopes.reserve(x.size());
  std::size_t collapsed = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!knots.empty() && cdf.values[i] - knots.back() <= tol.collapse) {
      ++collapsed;
      continue;
    }
    knots.push_back(cdf.values[i]);
    values.push_back(L[i]);
    slopes.push_back(x[i]);
  }
  if (knots.size() < 2) throw ValidationError("density is concentrated on a single cell");
  const double total = L.back();
  knots.back() = 1.0;
  values.back() = total;
  if (diag) {
    diag->collapsed_nodes = collapsed;
    if (collapsed > 0)
      diag->warnings.push_back("merged " + std::to_string(collapsed) +
                               " nodes with repeated CDF values (zero-density plateau); "
                               "the curve there follows the generalized inverse");
  }

  const HermiteInterpolant interp(std::move(knots), std::move(values), std::move(slopes));
  std::vector<double> f(f_count);
  for (std::size_t i = 0; i < f_count; ++i) f[i] = fgrid_node(i, f_count);
  std::vector<double> curve = interp.evaluate_sorted(f);
  curve.front() = 0.0;
  curve.back() = total;
  return LorenzCurve(std::move(curve), density.time);
}

ReconstructedDensity density_from_lorenz(const LorenzCurve& curve, const Tolerances&) {
  const std::size_t n = curve.size();
  if (n < 5) throw ValidationError("density_from_lorenz: need at least 5 f-nodes");
  const double df = curve.spacing();
  const auto L = curve.values();
  std::vector<double> x, rho;
  x.reserve(n - 2);
  rho.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double second = L[i + 1] - 2.0 * L[i] + L[i - 1];
    if (!(second > 0.0))
      throw ValidationError("density_from_lorenz: curve is not strictly convex at f-node " +
                            std::to_string(i) +
                            " (zero or negative second difference has no density)");
    x.push_back((L[i + 1] - L[i - 1]) / (2.0 * df));
    rho.push_back(df * df / second);
  }
  const Domain domain = x.front() > 0.0 ? Domain::positive_half_line : Domain::real_line;
  DensityField density{SpatialGrid(std::move(x), domain), std::move(rho), curve.time()};
  const double covered = curve.f(n - 2) - curve.f(1);
  const double mass = density.mass();
  return {std::move(density), covered, mass - covered};
}

std::vector<double> sample_density(const DensityField& density, std::span<const double> at) {
  std::vector<double> out(at.size());
  for (std::size_t i = 0; i < at.size(); ++i)
    out[i] = interp_linear(density.grid.nodes(), density.values, at[i], 0.0);
  return out;
}

std::vector<double> quantiles(const DensityField& density, std::span<const double> probs,
                              const Tolerances& tol) {
  const SampledCDF cdf = cdf_from_density(density, tol);
  const auto x = density.grid.nodes();
  std::vector<double> out(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("quantile probability outside [0,1]");
    const auto it = std::lower_bound(cdf.values.begin(), cdf.values.end(), p);
    if (it == cdf.values.begin()) {
      out[k] = x.front();
      continue;
    }
    if (it == cdf.values.end()) {
      out[k] = x.back();
      continue;
    }
    const std::size_t i = static_cast<std::size_t>(it - cdf.values.begin());
    const double f0 = cdf.values[i - 1];
    const double f1 = cdf.values[i];
    // Invert the quadratic CDF of the piecewise-linear density in this cell.
    const double h = x[i] - x[i - 1];
    const double r0 = density.values[i - 1] / density.mass();
    const double r1 = density.values[i] / density.mass();
    const double target = p - f0;
    const double a = 0.5 * (r1 - r0) / h;
    double t;
    if (std::abs(a) * h * h < 1e-14 * std::max(f1 - f0, 1e-300)) {
      t = r0 > 0.0 ? target / r0 : h * target / std::max(f1 - f0, 1e-300);
    } else {
      const double disc = r0 * r0 + 4.0 * a * target;
      t = 2.0 * target / (r0 + std::sqrt(std::max(disc, 0.0)));
    }
    out[k] = x[i - 1] + std::clamp(t, 0.0, h);
  }
  return out;
}

DensityField normalize_wealth(const DensityField& density) {
  const DensityField unit = density.normalized();
  const double m = unit.mean();
  if (!(m > 0.0)) throw ValidationError("normalize_wealth: mean must be positive");
  std::vector<double> w(unit.grid.size());
  std::vector<double> rho(unit.grid.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = unit.grid[i] / m;
    rho[i] = unit.values[i] * m;
  }
  return {SpatialGrid(std::move(w), unit.grid.domain()), std::move(rho), unit.time};
}

}  // namespace lorenzlab
