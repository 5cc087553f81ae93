#pragma once

#include <cstddef>
#include <vector>

#include "lorenzlab/fields.hpp"

namespace lorenzlab::analytic {

/// Inverse error function on (-1, 1). Rational initial guess, then two
/// Newton steps against std::erf (or std::erfc in the tails).
/// Throws ValidationError for |y| >= 1.
double erf_inv(double y);

/// Inverse complementary error function on (0, 2).
double erfc_inv(double q);

/// Standard normal quantile Phi^{-1}(p), p in (0, 1). Accurate in both tails.
double normal_quantile(double p);

double normal_pdf(double z);

/// Lorenz curve of a Gaussian with the given mean and std:
///   m f - s phi(Phi^{-1}(f)),
/// with the exact limits 0 at f = 0 and m at f = 1. The bump is subtracted,
/// which keeps the curve below its chord.
double gaussian_lorenz(double f, double mean, double std);

/// Heat-equation Lorenz curve from rho(x,0) = delta(x - a):
/// gaussian_lorenz(f, a, sqrt(2 D t)).
double heat_lorenz(double f, double t, double D, double a);

/// Same, starting from a Gaussian of std s0 (equivalently a delta at the
/// earlier time -s0^2 / 2D).
double heat_lorenz(double f, double t, double D, double a, double s0);

struct OUParams {
  double a = 0.0;      // initial mean
  double mu = 0.0;     // target mean
  double sigma = 1.0;  // relaxation rate
  double D = 1.0;      // diffusion
  double s0 = 0.0;     // initial std (0 = delta)

  void validate() const;
};

double ou_mean(double t, const OUParams& p);
/// sqrt(s0^2 e^{-2 sigma t} + (D/sigma)(1 - e^{-2 sigma t}))
double ou_std(double t, const OUParams& p);
double ou_lorenz(double f, double t, const OUParams& p);

/// Sample a closed form on an n-node f-grid.
LorenzCurve gaussian_lorenz_curve(std::size_t f_count, double mean, double std, double time = 0.0);
LorenzCurve heat_lorenz_curve(std::size_t f_count, double t, double D, double a, double s0 = 0.0);
LorenzCurve ou_lorenz_curve(std::size_t f_count, double t, const OUParams& p);

/// Gaussian density on a grid (not renormalized).
std::vector<double> gaussian_pdf(const SpatialGrid& grid, double mean, double std);

// Heat <-> quadratic-potential Lorenz dynamics.
//
// With s = log sqrt(2t + 1) and h = f, the curve J(h, s) = e^{-s} L(h, t)
// carries a solution of L_t = -D / L_ff to a solution of
// J_s + J = -D / J_hh, the Lorenz dynamics of the confining quadratic
// potential (OU drift with sigma = 1, mu = 0).

double scaled_time(double t);       // log sqrt(2t + 1)
double heat_time(double s);         // (e^{2s} - 1) / 2

struct ScaledCurve {
  LorenzCurve curve;  // J(., s); curve.time() == s
  double s;
};

ScaledCurve heat_to_quadratic_map(const LorenzCurve& heat_curve);
LorenzCurve quadratic_to_heat_map(const LorenzCurve& scaled_curve);

/// Residual (J_next - J_prev)/ds + J_mid + D / J_hh(mid) at the interior
/// nodes, J_mid the average of the two curves.
std::vector<double> quadratic_potential_residual(const LorenzCurve& prev, const LorenzCurve& next,
                                                 double ds, double D = 1.0);

}  // namespace lorenzlab::analytic
