#pragma once

#include <span>
#include <vector>

namespace tedfem::reference {

/// End force per undeformed area of a homogeneously stretched bar,
/// P = Y0 (s + s^2/2)(1 + s) for stretch s = dL/L.
double stretch_force_per_area(double Y0, double stretch);

/// Fundamental angular frequency of an uncoupled fixed-free bar.
double fixed_free_frequency(double Y0, double rho0, double length);

/// Steady temperature with k = k0 exp(beta (T - T0)) and uniform volumetric
/// source r, both ends held at T0:
///   T = T0 + ln(1 + beta r x (L - x) / (2 k0)) / beta   (parabola at beta = 0).
double exponential_conduction_profile(double k0, double beta, double T0, double r,
                                      double length, double x);

/// Independent check of the same boundary-value problem
/// (k(T) T')' = -r, T(0) = T_left, T(L) = T_right, by RK4 shooting on the
/// initial flux. Returns T at every x in `xs` (0 <= x <= L).
std::vector<double> conduction_profile_shooting(double k0, double beta, double T0, double r,
                                                double length, double T_left, double T_right,
                                                std::span<const double> xs);

}  // namespace tedfem::reference
