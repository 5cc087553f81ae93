#include "lorenzlab/analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lorenzlab/error.hpp"

namespace lorenzlab::analytic {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoOverSqrtPi = std::numbers::inv_sqrtpi * 2.0;

// Acklam's rational approximation to the normal quantile (relative error
// about 1.2e-9); only used as a starting point for Newton.
double normal_quantile_guess(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549671348283725e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) return -normal_quantile_guess(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// erfc^{-1}(q) for q in (0, 1]: Newton on erfc, which keeps full relative
// accuracy in the far tail.
double erfc_inv_upper(double q) {
  double z = -normal_quantile_guess(0.5 * q) / kSqrt2;
  for (int k = 0; k < 2; ++k) z += (std::erfc(z) - q) / (kTwoOverSqrtPi * std::exp(-z * z));
  return z;
}

}  // namespace

double erf_inv(double y) {
  if (!(std::abs(y) < 1.0))
    throw ValidationError("erf_inv: argument must lie in (-1, 1), got " + std::to_string(y));
  if (y == 0.0) return 0.0;
  if (std::abs(y) <= 0.5) {
    double z = normal_quantile_guess(0.5 * (1.0 + y)) / kSqrt2;
    for (int k = 0; k < 2; ++k) z -= (std::erf(z) - y) / (kTwoOverSqrtPi * std::exp(-z * z));
    return z;
  }
  const double z = erfc_inv_upper(1.0 - std::abs(y));
  return y > 0 ? z : -z;
}

double erfc_inv(double q) {
  if (!(q > 0.0 && q < 2.0))
    throw ValidationError("erfc_inv: argument must lie in (0, 2), got " + std::to_string(q));
  if (q <= 1.0) return erfc_inv_upper(q);
  if (q >= 1.5) return -erfc_inv_upper(2.0 - q);
  return erf_inv(1.0 - q);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ValidationError("normal_quantile: probability must lie in (0, 1)");
  if (p < 0.25) return -kSqrt2 * erfc_inv_upper(2.0 * p);
  if (p > 0.75) return kSqrt2 * erfc_inv_upper(2.0 * (1.0 - p));
  return kSqrt2 * erf_inv(2.0 * p - 1.0);
}

double normal_pdf(double z) { return std::exp(-0.5 * z * z) * std::numbers::inv_sqrtpi / kSqrt2; }

double gaussian_lorenz(double f, double mean, double std) {
  if (!(std >= 0.0)) throw ValidationError("gaussian_lorenz: std must be >= 0");
  if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("gaussian_lorenz: f must lie in [0, 1]");
  if (f == 0.0) return 0.0;
  if (f == 1.0) return mean;
  if (std == 0.0) return mean * f;
  return mean * f - std * normal_pdf(normal_quantile(f));
}

double heat_lorenz(double f, double t, double D, double a) { return heat_lorenz(f, t, D, a, 0.0); }

double heat_lorenz(double f, double t, double D, double a, double s0) {
  if (!(t >= 0.0)) throw ValidationError("heat_lorenz: t must be >= 0");
  if (!(D > 0.0)) throw ValidationError("heat_lorenz: D must be > 0");
  return gaussian_lorenz(f, a, std::sqrt(s0 * s0 + 2.0 * D * t));
}

void OUParams::validate() const {
  if (!(sigma > 0.0)) throw ValidationError("OU: sigma must be > 0");
  if (!(D > 0.0)) throw ValidationError("OU: D must be > 0");
  if (!(s0 >= 0.0)) throw ValidationError("OU: initial std must be >= 0");
}

double ou_mean(double t, const OUParams& p) {
  const double decay = std::exp(-p.sigma * t);
  return p.a * decay + p.mu * (1.0 - decay);
}

double ou_std(double t, const OUParams& p) {
  const double relaxed = -std::expm1(-2.0 * p.sigma * t);  // 1 - e^{-2 sigma t}
  return std::sqrt(p.s0 * p.s0 * std::exp(-2.0 * p.sigma * t) + p.D / p.sigma * relaxed);
}

double ou_lorenz(double f, double t, const OUParams& p) {
  p.validate();
  if (!(t >= 0.0)) throw ValidationError("ou_lorenz: t must be >= 0");
  return gaussian_lorenz(f, ou_mean(t, p), ou_std(t, p));
}

LorenzCurve gaussian_lorenz_curve(std::size_t f_count, double mean, double std, double time) {
  if (f_count < 3) throw ValidationError("f_count must be >= 3");
  std::vector<double> v(f_count);
  for (std::size_t i = 0; i < f_count; ++i) v[i] = gaussian_lorenz(fgrid_node(i, f_count), mean, std);
  return LorenzCurve(std::move(v), time);
}

LorenzCurve heat_lorenz_curve(std::size_t f_count, double t, double D, double a, double s0) {
  if (!(D > 0.0)) throw ValidationError("heat_lorenz: D must be > 0");
  return gaussian_lorenz_curve(f_count, a, std::sqrt(s0 * s0 + 2.0 * D * t), t);
}

LorenzCurve ou_lorenz_curve(std::size_t f_count, double t, const OUParams& p) {
  p.validate();
  return gaussian_lorenz_curve(f_count, ou_mean(t, p), ou_std(t, p), t);
}

std::vector<double> gaussian_pdf(const SpatialGrid& grid, double mean, double std) {
  if (!(std > 0.0)) throw ValidationError("gaussian_pdf: std must be > 0");
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = normal_pdf((grid[i] - mean) / std) / std;
  return v;
}

double scaled_time(double t) {
  if (!(t >= 0.0)) throw ValidationError("scaled_time: t must be >= 0");
  return 0.5 * std::log1p(2.0 * t);
}

double heat_time(double s) { return 0.5 * std::expm1(2.0 * s); }

ScaledCurve heat_to_quadratic_map(const LorenzCurve& heat_curve) {
  const double s = scaled_time(heat_curve.time());
  const double scale = std::exp(-s);
  std::vector<double> v(heat_curve.values().begin(), heat_curve.values().end());
  for (double& x : v) x *= scale;
  return {LorenzCurve(std::move(v), s), s};
}

LorenzCurve quadratic_to_heat_map(const LorenzCurve& scaled_curve) {
  const double s = scaled_curve.time();
  const double scale = std::exp(s);
  std::vector<double> v(scaled_curve.values().begin(), scaled_curve.values().end());
  for (double& x : v) x *= scale;
  return LorenzCurve(std::move(v), heat_time(s));
}

std::vector<double> quadratic_potential_residual(const LorenzCurve& prev, const LorenzCurve& next,
                                                 double ds, double D) {
  if (prev.size() != next.size()) throw ValidationError("residual: curve sizes differ");
  if (!(ds > 0.0)) throw ValidationError("residual: ds must be > 0");
  const std::size_t n = prev.size();
  const double h = prev.spacing();
  std::vector<double> mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (prev[i] + next[i]);
  std::vector<double> r(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double jhh = (mid[i + 1] - 2.0 * mid[i] + mid[i - 1]) / (h * h);
    r[i - 1] = (next[i] - prev[i]) / ds + mid[i] + D / jhh;
  }
  return r;
}

}  // namespace lorenzlab::analytic
