#pragma once

#include <span>
#include <vector>

namespace lorenzlab::quad {

// Composite trapezoid rules. Sums run left to right so results are
// bit-reproducible.

double trapezoid(std::span<const double> y, std::span<const double> x);
double trapezoid_uniform(std::span<const double> y, double h);

/// Running trapezoid integral, starting at 0.
std::vector<double> cumulative_trapezoid(std::span<const double> y, std::span<const double> x);

/// Weights c_i with sum_i c_i y_i equal to trapezoid(y, x).
std::vector<double> trapezoid_weights(std::span<const double> x);

}  // namespace lorenzlab::quad

namespace lorenzlab::quad {

// Moments of the piecewise-linear interpolant of rho. The zeroth moment
// coincides with the trapezoid rule; the first and second are exact for the
// interpolant, which keeps dL/dF = x_i at every node.

std::vector<double> cumulative_linear_first_moment(std::span<const double> rho,
                                                   std::span<const double> x);
double linear_first_moment(std::span<const double> rho, std::span<const double> x);
double linear_second_moment(std::span<const double> rho, std::span<const double> x);

}  // namespace lorenzlab::quad
