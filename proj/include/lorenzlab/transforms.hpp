#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lorenzlab/fields.hpp"

namespace lorenzlab {

/// Normalized cumulative distribution F(x) by cumulative trapezoid.
SampledCDF cdf_from_density(const DensityField& density, const Tolerances& tol = {});

/// Normalized incomplete first moment L(x) = int_{-inf}^x y rho(y) dy by
/// cumulative trapezoid; the last value is the distribution mean.
std::vector<double> incomplete_first_moment(const DensityField& density,
                                            const Tolerances& tol = {});

struct TransformDiagnostics {
  std::size_t collapsed_nodes = 0;
  std::vector<std::string> warnings;
};

/// Density -> Lorenz curve on `f_count` uniform f-nodes.
///
/// The parametric pairs (F(x_i), L(x_i)) are the exact zeroth and first
/// incomplete moments of the piecewise-linear interpolant of rho, so dL/dF at
/// a node is exactly x_i. L(F) is resampled with the cubic Hermite
/// interpolant that uses those slopes; every segment of it is convex for a
/// nonnegative density. Runs of CDF values closer than tol.collapse are merged
/// (zero-density plateaus) and reported through `diag`.
LorenzCurve lorenz_from_density(const DensityField& density, std::size_t f_count,
                                const Tolerances& tol = {},
                                TransformDiagnostics* diag = nullptr);

struct ReconstructedDensity {
  DensityField density;   // nodes x_i = L_f(f_i), values 1/L_ff(f_i), i = 1..n-2
  double covered_mass;    // f_{n-2} - f_1, probability spanned by the nodes
  double mass_error;      // trapezoid mass of `density` minus covered_mass
};

/// Lorenz curve -> density by central differences at the interior f-nodes.
/// Rejects curves that are not strictly convex.
///
/// The values are returned unscaled; rescaling to the covered mass would push
/// the O(df) boundary-layer defect of the end segments onto every node.
ReconstructedDensity density_from_lorenz(const LorenzCurve& curve, const Tolerances& tol = {});

/// Density values at arbitrary points, linear between nodes and 0 outside.
std::vector<double> sample_density(const DensityField& density, std::span<const double> at);

/// Inverse CDF G(f) at the requested probabilities (linear in each CDF cell).
std::vector<double> quantiles(const DensityField& density, std::span<const double> probs,
                              const Tolerances& tol = {});

/// Change of wealth units so that mass and mean are both exactly 1.
DensityField normalize_wealth(const DensityField& density);

}  // namespace lorenzlab
