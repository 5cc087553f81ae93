#include "lorenzlab/initial.hpp"

#include <cmath>
#include <numbers>

#include "lorenzlab/analytic.hpp"
#include "lorenzlab/error.hpp"
#include "lorenzlab/interpolation.hpp"

namespace lorenzlab {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

DensityField make_initial_density(const InitialCondition& ic, const SpatialGrid& grid) {
  std::vector<double> rho(grid.size(), 0.0);
  std::visit(
      overloaded{
          [&](const GaussianInit& g) {
            if (!(g.std >= 0.0)) throw ValidationError("Gaussian initial std must be >= 0");
            // A delta is regularized to 3 grid spacings.
            const double s = g.std > 0.0 ? g.std : 3.0 * grid.spacing();
            rho = analytic::gaussian_pdf(grid, g.mean, s);
          },
          [&](const UniformInit& u) {
            if (!(u.b > u.a)) throw ValidationError("uniform initial: need b > a");
            const double h = 1.0 / (u.b - u.a);
            const double eps = 1e-12 * (u.b - u.a);
            for (std::size_t i = 0; i < rho.size(); ++i)
              rho[i] = (grid[i] >= u.a - eps && grid[i] <= u.b + eps) ? h : 0.0;
          },
          [&](const LognormalInit& l) {
            if (!(l.mean > 0.0 && l.sigma_log > 0.0))
              throw ValidationError("lognormal initial: need mean > 0 and sigma_log > 0");
            const double mu = std::log(l.mean) - 0.5 * l.sigma_log * l.sigma_log;
            for (std::size_t i = 0; i < rho.size(); ++i) {
              const double w = grid[i];
              if (w <= 0.0) continue;
              const double z = (std::log(w) - mu) / l.sigma_log;
              rho[i] = analytic::normal_pdf(z) / (w * l.sigma_log);
            }
          },
          [&](const TabulatedInit& t) {
            if (t.x.size() != t.rho.size() || t.x.size() < 2)
              throw ValidationError("tabulated initial: need >= 2 matching (x, rho) pairs");
            for (std::size_t i = 1; i < t.x.size(); ++i)
              if (!(t.x[i] > t.x[i - 1]))
                throw ValidationError("tabulated initial: x must be strictly increasing");
            for (std::size_t i = 0; i < rho.size(); ++i)
              rho[i] = interp_linear(t.x, t.rho, grid[i], 0.0);
          }},
      ic);
  DensityField d{grid, std::move(rho), 0.0};
  validate(d, {}, {.check_mass = false, .check_tails = false});
  return d.normalized();
}

}  // namespace lorenzlab
