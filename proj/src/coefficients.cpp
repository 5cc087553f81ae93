#include "lorenzlab/coefficients.hpp"

#include <cmath>

#include "lorenzlab/error.hpp"
#include "lorenzlab/quadrature.hpp"

namespace lorenzlab {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

void CoefficientSpec::validate() const {
  std::visit(overloaded{[](const ZeroDrift&) {},
                        [](const OUDrift& d) {
                          if (!(d.sigma > 0.0)) throw ValidationError("OU drift: sigma must be > 0");
                          if (!std::isfinite(d.mu)) throw ValidationError("OU drift: mu not finite");
                        }},
             drift);
  std::visit(overloaded{[](const ConstantDiffusion& d) {
                          if (!(d.D > 0.0))
                            throw ValidationError("constant diffusion: D must be > 0");
                        },
                        [](const YardSaleDiffusion& d) {
                          if (!(d.gamma > 0.0 && d.gamma < 1.0))
                            throw ValidationError("yard-sale: gamma must lie in (0, 1)");
                        }},
             diffusion);
}

double eval_drift(const CoefficientSpec& coeffs, double x) {
  return std::visit(overloaded{[](const ZeroDrift&) { return 0.0; },
                               [x](const OUDrift& d) { return d.sigma * (d.mu - x); }},
                    coeffs.drift);
}

std::vector<double> drift_profile(const CoefficientSpec& coeffs, const SpatialGrid& grid) {
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = eval_drift(coeffs, grid[i]);
  return s;
}

double eval_yardsale_diffusion(const DensityField& density, double w, double gamma) {
  if (density.grid.domain() != Domain::positive_half_line)
    throw ValidationError("yard-sale diffusion is defined on the positive half-line only");
  const auto x = density.grid.nodes();
  std::vector<double> integrand(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = std::min(w, x[i]);
    integrand[i] = m * m * density.values[i];
  }
  return 0.5 * gamma * quad::trapezoid(integrand, x);
}

std::vector<double> diffusion_profile(const CoefficientSpec& coeffs, const DensityField& density,
                                      Kernel kernel) {
  const std::size_t n = density.grid.size();
  if (const auto* c = std::get_if<ConstantDiffusion>(&coeffs.diffusion))
    return std::vector<double>(n, c->D);
  const double gamma = std::get<YardSaleDiffusion>(coeffs.diffusion).gamma;
  if (density.grid.domain() != Domain::positive_half_line)
    throw ValidationError("yard-sale diffusion is defined on the positive half-line only");
  const auto weights = quad::trapezoid_weights(density.grid.nodes());
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = weights[i] * density.values[i];
  auto out = kernels::min_square_moment(density.grid.nodes(), mass, kernel);
  for (double& v : out) v *= 0.5 * gamma;
  return out;
}

double yardsale_diffusion_bound(double gamma, double w_max, double mean) {
  return 0.5 * gamma * w_max * mean;
}

}  // namespace lorenzlab
