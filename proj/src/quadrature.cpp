#include "lorenzlab/quadrature.hpp"

#include "lorenzlab/error.hpp"

namespace lorenzlab::quad {

namespace {
void check_sizes(std::span<const double> y, std::span<const double> x) {
  if (y.size() != x.size()) throw ValidationError("quadrature: size mismatch");
}
}  // namespace

double trapezoid(std::span<const double> y, std::span<const double> x) {
  check_sizes(y, x);
  double s = 0.0;
  for (std::size_t i = 1; i < y.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

double trapezoid_uniform(std::span<const double> y, double h) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * y.front();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  s += 0.5 * y.back();
  return s * h;
}

std::vector<double> cumulative_trapezoid(std::span<const double> y, std::span<const double> x) {
  check_sizes(y, x);
  std::vector<double> c(y.size(), 0.0);
  for (std::size_t i = 1; i < y.size(); ++i)
    c[i] = c[i - 1] + 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return c;
}

std::vector<double> trapezoid_weights(std::span<const double> x) {
  std::vector<double> w(x.size(), 0.0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double h = 0.5 * (x[i] - x[i - 1]);
    w[i - 1] += h;
    w[i] += h;
  }
  return w;
}

}  // namespace lorenzlab::quad

namespace lorenzlab::quad {

std::vector<double> cumulative_linear_first_moment(std::span<const double> rho,
                                                   std::span<const double> x) {
  check_sizes(rho, x);
  std::vector<double> c(rho.size(), 0.0);
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const double h = x[i] - x[i - 1];
    c[i] = c[i - 1] + h / 6.0 *
                          (rho[i - 1] * (2.0 * x[i - 1] + x[i]) + rho[i] * (x[i - 1] + 2.0 * x[i]));
  }
  return c;
}

double linear_first_moment(std::span<const double> rho, std::span<const double> x) {
  check_sizes(rho, x);
  double s = 0.0;
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const double h = x[i] - x[i - 1];
    s += h / 6.0 * (rho[i - 1] * (2.0 * x[i - 1] + x[i]) + rho[i] * (x[i - 1] + 2.0 * x[i]));
  }
  return s;
}

double linear_second_moment(std::span<const double> rho, std::span<const double> x) {
  check_sizes(rho, x);
  double s = 0.0;
  for (std::size_t i = 1; i < rho.size(); ++i) {
    const double a = x[i - 1];
    const double b = x[i];
    const double h = b - a;
    s += h / 12.0 *
         (rho[i - 1] * (3 * a * a + 2 * a * b + b * b) + rho[i] * (a * a + 2 * a * b + 3 * b * b));
  }
  return s;
}

}  // namespace lorenzlab::quad
