#pragma once

#include <cstddef>
#include <vector>

#include "lorenzlab/coefficients.hpp"
#include "lorenzlab/fields.hpp"
#include "lorenzlab/kernels.hpp"

namespace lorenzlab {

// Discrete derivatives and transformed coefficients of a sampled Lorenz
// curve, shared by the Lorenz solver and the Lorenz-side metrics.

/// L_f at every node: central in the interior, second-order one-sided at the
/// ends. Approximates the quantile function G(f).
std::vector<double> lorenz_slopes(const LorenzCurve& curve);

/// Central second difference / df^2 at every node. The two end entries copy
/// their neighbours.
std::vector<double> lorenz_curvature(const LorenzCurve& curve);

/// D~ at every node. Constant -> D; yard-sale ->
/// (gamma/2) int_0^1 min(L_g, L_f)^2 dg with slopes from lorenz_slopes.
std::vector<double> transformed_diffusion(const LorenzCurve& curve, const CoefficientSpec& coeffs,
                                          Kernel kernel = Kernel::scan);
double transformed_diffusion(const LorenzCurve& curve, std::size_t f_index,
                             const CoefficientSpec& coeffs);

/// int_0^f Sigma~ dg at every node. OU uses the closed form
/// sigma (mu f - L(f)), valid because L(0) = 0.
std::vector<double> transformed_drift_integral(const LorenzCurve& curve,
                                               const CoefficientSpec& coeffs);
double transformed_drift_integral(const LorenzCurve& curve, std::size_t f_index,
                                  const CoefficientSpec& coeffs);

/// Same integral by cumulative trapezoid of Sigma(L_g); the independent
/// route the closed form is checked against.
std::vector<double> transformed_drift_integral_quadrature(const LorenzCurve& curve,
                                                          const CoefficientSpec& coeffs);

/// Throws ValidationError unless every interior second difference exceeds
/// `floor`.
void require_convex(const LorenzCurve& curve, double floor, const char* what);

}  // namespace lorenzlab
