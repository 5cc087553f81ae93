#include "lorenzlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/lorenz_ops.hpp"
#include "lorenzlab/quadrature.hpp"

namespace lorenzlab {

namespace {

void require_unit_boundary(const LorenzCurve& curve, const Tolerances& tol, const char* what) {
  if (std::abs(curve.right_boundary() - 1.0) > tol.mass)
    throw ValidationError(std::string(what) + ": curve must have unit right boundary (got " +
                          std::to_string(curve.right_boundary()) + "); normalize first");
}

}  // namespace

double gini_from_lorenz(const LorenzCurve& curve, const Tolerances& tol) {
  require_unit_boundary(curve, tol, "gini_from_lorenz");
  std::vector<double> gap(curve.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = curve.f(i) - curve[i];
  return 2.0 * quad::trapezoid_uniform(gap, curve.spacing());
}

double gini_from_density(const DensityField& density, const Tolerances& tol, Kernel kernel) {
  if (density.grid.domain() != Domain::positive_half_line)
    throw ValidationError("gini_from_density: needs a positive half-line density");
  validate(density, tol, {.check_mass = false, .check_tails = false});
  const double mass = density.mass();
  const double mean = density.mean();
  if (std::abs(mass - 1.0) > tol.moment || std::abs(mean - 1.0) > tol.moment)
    throw ValidationError("gini_from_density: mass and mean must both be 1 (got mass " +
                          std::to_string(mass) + ", mean " + std::to_string(mean) + ")");
  const auto weights = quad::trapezoid_weights(density.grid.nodes());
  std::vector<double> m(weights.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = weights[i] * density.values[i];
  return 1.0 - kernels::min_pair_sum(density.grid.nodes(), m, kernel);
}

double hoover_from_lorenz(const LorenzCurve& curve, const Tolerances& tol) {
  require_unit_boundary(curve, tol, "hoover_from_lorenz");
  double h = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) h = std::max(h, curve.f(i) - curve[i]);
  return h;
}

double gini_rate_density(const DensityField& density, const CoefficientSpec& coeffs,
                         Kernel kernel) {
  if (!coeffs.drift_free())
    throw ValidationError("gini_rate_density: the rate formula holds for drift-free dynamics only");
  const auto D = diffusion_profile(coeffs, density, kernel);
  std::vector<double> integrand(D.size());
  for (std::size_t i = 0; i < D.size(); ++i)
    integrand[i] = D[i] * density.values[i] * density.values[i];
  return 2.0 * quad::trapezoid(integrand, density.grid.nodes());
}

double gini_rate_lorenz(const LorenzCurve& curve, const CoefficientSpec& coeffs, Kernel kernel) {
  if (!coeffs.drift_free())
    throw ValidationError("gini_rate_lorenz: the rate formula holds for drift-free dynamics only");
  require_convex(curve, 0.0, "gini_rate_lorenz");
  const auto Dt = transformed_diffusion(curve, coeffs, kernel);
  const auto Lff = lorenz_curvature(curve);
  std::vector<double> integrand(Dt.size());
  for (std::size_t i = 0; i < Dt.size(); ++i) integrand[i] = Dt[i] / Lff[i];
  return 2.0 * quad::trapezoid_uniform(integrand, curve.spacing());
}

double gini_pairwise(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 2) throw ValidationError("gini_pairwise: need at least two values");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  // sum_{i<j} (s_j - s_i) = sum_k (2k - n + 1) s_k
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    weighted += (2.0 * static_cast<double>(k) - static_cast<double>(n) + 1.0) * s[k];
    total += s[k];
  }
  return weighted / (static_cast<double>(n) * total);
}

}  // namespace lorenzlab
