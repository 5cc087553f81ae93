#include "lorenzlab/lorenz_ops.hpp"

#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/quadrature.hpp"

namespace lorenzlab {

std::vector<double> lorenz_slopes(const LorenzCurve& curve) {
  const std::size_t n = curve.size();
  const double h = curve.spacing();
  std::vector<double> s(n);
  for (std::size_t i = 1; i + 1 < n; ++i) s[i] = (curve[i + 1] - curve[i - 1]) / (2.0 * h);
  s[0] = (-3.0 * curve[0] + 4.0 * curve[1] - curve[2]) / (2.0 * h);
  s[n - 1] = (3.0 * curve[n - 1] - 4.0 * curve[n - 2] + curve[n - 3]) / (2.0 * h);
  return s;
}

std::vector<double> lorenz_curvature(const LorenzCurve& curve) {
  const std::size_t n = curve.size();
  const double h2 = curve.spacing() * curve.spacing();
  std::vector<double> c(n);
  for (std::size_t i = 1; i + 1 < n; ++i)
    c[i] = (curve[i + 1] - 2.0 * curve[i] + curve[i - 1]) / h2;
  c[0] = c[1];
  c[n - 1] = c[n - 2];
  return c;
}

std::vector<double> transformed_diffusion(const LorenzCurve& curve, const CoefficientSpec& coeffs,
                                          Kernel kernel) {
  const std::size_t n = curve.size();
  if (const auto* c = std::get_if<ConstantDiffusion>(&coeffs.diffusion))
    return std::vector<double>(n, c->D);
  const double gamma = std::get<YardSaleDiffusion>(coeffs.diffusion).gamma;
  const auto slopes = lorenz_slopes(curve);
  std::vector<double> weights(n, curve.spacing());
  weights.front() *= 0.5;
  weights.back() *= 0.5;
  auto out = kernels::min_square_moment(slopes, weights, kernel);
  for (double& v : out) v *= 0.5 * gamma;
  return out;
}

double transformed_diffusion(const LorenzCurve& curve, std::size_t f_index,
                             const CoefficientSpec& coeffs) {
  if (f_index >= curve.size()) throw ValidationError("f_index out of range");
  if (const auto* c = std::get_if<ConstantDiffusion>(&coeffs.diffusion)) return c->D;
  return transformed_diffusion(curve, coeffs, Kernel::reference)[f_index];
}

std::vector<double> transformed_drift_integral(const LorenzCurve& curve,
                                               const CoefficientSpec& coeffs) {
  const std::size_t n = curve.size();
  std::vector<double> out(n, 0.0);
  if (const auto* ou = std::get_if<OUDrift>(&coeffs.drift))
    for (std::size_t i = 0; i < n; ++i) out[i] = ou->sigma * (ou->mu * curve.f(i) - curve[i]);
  return out;
}

double transformed_drift_integral(const LorenzCurve& curve, std::size_t f_index,
                                  const CoefficientSpec& coeffs) {
  if (f_index >= curve.size()) throw ValidationError("f_index out of range");
  if (const auto* ou = std::get_if<OUDrift>(&coeffs.drift))
    return ou->sigma * (ou->mu * curve.f(f_index) - curve[f_index]);
  return 0.0;
}

std::vector<double> transformed_drift_integral_quadrature(const LorenzCurve& curve,
                                                          const CoefficientSpec& coeffs) {
  const std::size_t n = curve.size();
  const auto slopes = lorenz_slopes(curve);
  std::vector<double> sigma(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    sigma[i] = eval_drift(coeffs, slopes[i]);
    f[i] = curve.f(i);
  }
  return quad::cumulative_trapezoid(sigma, f);
}

void require_convex(const LorenzCurve& curve, double floor, const char* what) {
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    const double d2 = curve[i + 1] - 2.0 * curve[i] + curve[i - 1];
    if (!(d2 > floor))
      throw ValidationError(std::string(what) + ": curve is not convex at f-node " +
                            std::to_string(i) + " (second difference " + std::to_string(d2) +
                            ")");
  }
}

}  // namespace lorenzlab
