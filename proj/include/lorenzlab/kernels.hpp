#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace lorenzlab {

/// How the O(n^2) nonlocal quadratures are evaluated.
///
///   reference  serial double loop, the oracle the others are tested against
///   parallel   OpenMP over output nodes; each node's inner sum runs in the
///              same order as the reference, so results are bit-identical
///   scan       O(n) prefix/suffix sums; requires sorted points and falls
///              back to `parallel` otherwise
enum class Kernel { reference, parallel, scan };

std::string_view to_string(Kernel k);
Kernel kernel_from_string(std::string_view s);

namespace kernels {

/// out_i = sum_j mass_j * min(p_i, p_j)^2
std::vector<double> min_square_moment(std::span<const double> points,
                                      std::span<const double> mass, Kernel kernel);

/// sum_i sum_j mass_i mass_j min(p_i, p_j)
double min_pair_sum(std::span<const double> points, std::span<const double> mass,
                    Kernel kernel);

/// Explicit flux-form update of rho_t = -(S rho)_x + (D rho)_xx on a uniform
/// grid: interior nodes only, boundary nodes are set to 0.
void fpe_update(std::span<const double> rho, std::span<const double> drift,
                std::span<const double> diffusion, double dx, double dt,
                std::span<double> out, Kernel kernel);

/// Explicit update L_i + dt * (-Dt_i / Lff_i + drift_i) at interior nodes;
/// end values are copied through.
void lorenz_update(std::span<const double> curve, std::span<const double> diffusion,
                   std::span<const double> curvature, std::span<const double> drift_integral,
                   double dt, std::span<double> out, Kernel kernel);

bool is_sorted_ascending(std::span<const double> p);

}  // namespace kernels
}  // namespace lorenzlab
