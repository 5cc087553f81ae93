#pragma once

#include <variant>
#include <vector>

#include "lorenzlab/fields.hpp"
#include "lorenzlab/kernels.hpp"

namespace lorenzlab {

struct ZeroDrift {};

/// Sigma(x) = sigma (mu - x)
struct OUDrift {
  double sigma = 1.0;
  double mu = 0.0;
};

struct ConstantDiffusion {
  double D = 1.0;
};

/// D[w, rho] = (gamma/2) int_0^inf min(w, x)^2 rho(x) dx
struct YardSaleDiffusion {
  double gamma = 0.1;
};

using Drift = std::variant<ZeroDrift, OUDrift>;
using Diffusion = std::variant<ConstantDiffusion, YardSaleDiffusion>;

struct CoefficientSpec {
  Drift drift = ZeroDrift{};
  Diffusion diffusion = ConstantDiffusion{};

  bool drift_free() const { return std::holds_alternative<ZeroDrift>(drift); }
  bool is_yard_sale() const { return std::holds_alternative<YardSaleDiffusion>(diffusion); }

  /// Solver-grade check: sigma > 0, D > 0, gamma in (0,1).
  void validate() const;
};

double eval_drift(const CoefficientSpec& coeffs, double x);

/// Drift at every node of `grid`.
std::vector<double> drift_profile(const CoefficientSpec& coeffs, const SpatialGrid& grid);

/// (gamma/2) int min(w, x)^2 rho(x) dx at one point. Positive half-line only.
double eval_yardsale_diffusion(const DensityField& density, double w, double gamma);

/// Diffusion coefficient at every node of the density's grid, evaluated from
/// the density itself for nonlocal specs.
std::vector<double> diffusion_profile(const CoefficientSpec& coeffs, const DensityField& density,
                                      Kernel kernel = Kernel::scan);

/// Upper bound on the yard-sale coefficient over any density supported on
/// [0, w_max] with the given mean: (gamma/2) w_max mean.
double yardsale_diffusion_bound(double gamma, double w_max, double mean);

}  // namespace lorenzlab
