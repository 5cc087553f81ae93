#include "lorenzlab/kernels.hpp"

#include <algorithm>
#include <string>

#include "lorenzlab/error.hpp"

namespace lorenzlab {

std::string_view to_string(Kernel k) {
  switch (k) {
    case Kernel::reference: return "reference";
    case Kernel::parallel: return "parallel";
    case Kernel::scan: return "scan";
  }
  return "?";
}

Kernel kernel_from_string(std::string_view s) {
  if (s == "reference") return Kernel::reference;
  if (s == "parallel") return Kernel::parallel;
  if (s == "scan") return Kernel::scan;
  throw ValidationError("unknown kernel '" + std::string(s) + "'");
}

namespace kernels {

namespace {

// Below this many outputs the OpenMP fork costs more than the loop.
constexpr std::ptrdiff_t kParallelThreshold = 2048;

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": size mismatch");
}

double min_square_row(std::span<const double> p, std::span<const double> m, double pi) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double q = std::min(pi, p[j]);
    s += m[j] * q * q;
  }
  return s;
}

double min_row(std::span<const double> p, std::span<const double> m, double pi) {
  double s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += m[j] * std::min(pi, p[j]);
  return s;
}

}  // namespace

bool is_sorted_ascending(std::span<const double> p) {
  return std::is_sorted(p.begin(), p.end());
}

std::vector<double> min_square_moment(std::span<const double> points,
                                      std::span<const double> mass, Kernel kernel) {
  check_same(points.size(), mass.size(), "min_square_moment");
  const std::size_t n = points.size();
  std::vector<double> out(n);
  if (kernel == Kernel::scan && !is_sorted_ascending(points)) kernel = Kernel::parallel;
  switch (kernel) {
    case Kernel::reference:
      for (std::size_t i = 0; i < n; ++i) out[i] = min_square_row(points, mass, points[i]);
      break;
    case Kernel::parallel: {
      const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (sn >= kParallelThreshold)
      for (std::ptrdiff_t i = 0; i < sn; ++i)
        out[static_cast<std::size_t>(i)] =
            min_square_row(points, mass, points[static_cast<std::size_t>(i)]);
      break;
    }
    case Kernel::scan: {
      // out_i = sum_{j<=i} m_j p_j^2 + p_i^2 sum_{j>i} m_j
      std::vector<double> upper(n + 1, 0.0);
      for (std::size_t j = n; j-- > 0;) upper[j] = upper[j + 1] + mass[j];
      double lower = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        lower += mass[i] * points[i] * points[i];
        out[i] = lower + points[i] * points[i] * upper[i + 1];
      }
      break;
    }
  }
  return out;
}

double min_pair_sum(std::span<const double> points, std::span<const double> mass,
                    Kernel kernel) {
  check_same(points.size(), mass.size(), "min_pair_sum");
  const std::size_t n = points.size();
  if (kernel == Kernel::scan && !is_sorted_ascending(points)) kernel = Kernel::parallel;
  if (kernel == Kernel::scan) {
    std::vector<double> upper(n + 1, 0.0);
    for (std::size_t j = n; j-- > 0;) upper[j] = upper[j + 1] + mass[j];
    double lower = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lower += mass[i] * points[i];
      total += mass[i] * (lower + points[i] * upper[i + 1]);
    }
    return total;
  }
  std::vector<double> rows(n);
  if (kernel == Kernel::reference) {
    for (std::size_t i = 0; i < n; ++i) rows[i] = min_row(points, mass, points[i]);
  } else {
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (sn >= kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < sn; ++i)
      rows[static_cast<std::size_t>(i)] =
          min_row(points, mass, points[static_cast<std::size_t>(i)]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += mass[i] * rows[i];
  return total;
}

void fpe_update(std::span<const double> rho, std::span<const double> drift,
                std::span<const double> diffusion, double dx, double dt, std::span<double> out,
                Kernel kernel) {
  const std::size_t n = rho.size();
  check_same(n, drift.size(), "fpe_update");
  check_same(n, diffusion.size(), "fpe_update");
  check_same(n, out.size(), "fpe_update");
  const double a = dt / (2.0 * dx);
  const double b = dt / (dx * dx);
  auto node = [&](std::size_t i) {
    const double adv = drift[i + 1] * rho[i + 1] - drift[i - 1] * rho[i - 1];
    const double dif =
        diffusion[i + 1] * rho[i + 1] - 2.0 * diffusion[i] * rho[i] + diffusion[i - 1] * rho[i - 1];
    return rho[i] - a * adv + b * dif;
  };
  if (kernel == Kernel::reference) {
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = node(i);
  } else {
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (sn >= kParallelThreshold)
    for (std::ptrdiff_t i = 1; i < sn - 1; ++i) out[static_cast<std::size_t>(i)] = node(static_cast<std::size_t>(i));
  }
  out[0] = 0.0;
  out[n - 1] = 0.0;
}

void lorenz_update(std::span<const double> curve, std::span<const double> diffusion,
                   std::span<const double> curvature, std::span<const double> drift_integral,
                   double dt, std::span<double> out, Kernel kernel) {
  const std::size_t n = curve.size();
  check_same(n, diffusion.size(), "lorenz_update");
  check_same(n, curvature.size(), "lorenz_update");
  check_same(n, drift_integral.size(), "lorenz_update");
  check_same(n, out.size(), "lorenz_update");
  auto node = [&](std::size_t i) {
    return curve[i] + dt * (-diffusion[i] / curvature[i] + drift_integral[i]);
  };
  if (kernel == Kernel::reference) {
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = node(i);
  } else {
    const auto sn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (sn >= kParallelThreshold)
    for (std::ptrdiff_t i = 1; i < sn - 1; ++i) out[static_cast<std::size_t>(i)] = node(static_cast<std::size_t>(i));
  }
  out[0] = curve[0];
  out[n - 1] = curve[n - 1];
}

}  // namespace kernels
}  // namespace lorenzlab
