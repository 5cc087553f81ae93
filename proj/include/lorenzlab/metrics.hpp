#pragma once

#include <span>

#include "lorenzlab/coefficients.hpp"
#include "lorenzlab/fields.hpp"
#include "lorenzlab/kernels.hpp"

namespace lorenzlab {

/// Twice the area between the diagonal and the curve. Requires a unit right
/// boundary (unit total wealth).
double gini_from_lorenz(const LorenzCurve& curve, const Tolerances& tol = {});

/// 1 - double integral of min(w,y) rho(w) rho(y) by nested trapezoid.
/// Requires positive support with mass and mean both 1 within tol.moment.
double gini_from_density(const DensityField& density, const Tolerances& tol = {},
                         Kernel kernel = Kernel::scan);

/// max_f (f - L(f)); requires a unit right boundary.
double hoover_from_lorenz(const LorenzCurve& curve, const Tolerances& tol = {});

/// dG/dt = 2 int D rho^2 dw for drift-free dynamics.
double gini_rate_density(const DensityField& density, const CoefficientSpec& coeffs,
                         Kernel kernel = Kernel::scan);

/// dG/dt = 2 int_0^1 D~ / L_ff df, with D~ evaluated exactly as the Lorenz
/// solver does.
double gini_rate_lorenz(const LorenzCurve& curve, const CoefficientSpec& coeffs,
                        Kernel kernel = Kernel::scan);

/// Sample Gini by the mean absolute difference, O(n log n).
double gini_pairwise(std::span<const double> sample);

}  // namespace lorenzlab
