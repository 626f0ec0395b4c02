// Closed forms and small ODE solvers used as ground truth by the tests.
// Nothing here calls into the library.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

// Homogeneous uniaxial stretch s of a St. Venant-Kirchhoff bar: S = Y E,
// F = 1 + s, nominal stress P = F S.
inline double stretch_force_per_area(double Y0, double s) {
  const double E = s + 0.5 * s * s;
  return (1.0 + s) * Y0 * E;
}

inline double fixed_free_omega(double Y0, double rho0, double L) {
  return std::numbers::pi / (2.0 * L) * std::sqrt(Y0 / rho0);
}

inline double fixed_fixed_omega(double Y0, double rho0, double L) {
  return std::numbers::pi / L * std::sqrt(Y0 / rho0);
}

// Kirchhoff transform: phi(T) = (k0/beta)(exp(beta (T - T0)) - 1) turns
// (k(T) T')' = -r with T(0) = T(L) = T0 into phi'' = -r.
inline double kirchhoff_profile(double k0, double beta, double T0, double r, double L, double x) {
  const double phi = 0.5 * r * x * (L - x);
  if (beta == 0.0) return T0 + phi / k0;
  return T0 + std::log(1.0 + beta * phi / k0) / beta;
}

// (k(T) T')' = -r by classical RK4 on y = (T, k T'), bisection on the
// initial flux so that T(L) = T_right.
inline std::vector<double> shoot_profile(double k0, double beta, double T0, double r, double L,
                                         double T_left, double T_right,
                                         const std::vector<double>& xs, int steps = 40000) {
  auto k = [&](double T) { return k0 * std::exp(beta * (T - T0)); };
  auto integrate = [&](double q0, std::vector<double>* out) {
    double T = T_left, q = q0, x = 0.0;
    const double h = L / steps;
    std::size_t next = 0;
    auto record = [&](double xv, double Tv) {
      while (out && next < xs.size() && xs[next] <= xv + 1e-12 * L) {
        (void)xv;
        out->push_back(Tv);
        ++next;
      }
    };
    record(0.0, T);
    for (int i = 0; i < steps; ++i) {
      auto f = [&](double Tv, double qv, double& dT, double& dq) {
        dT = qv / k(Tv);
        dq = -r;
      };
      double a1, b1, a2, b2, a3, b3, a4, b4;
      f(T, q, a1, b1);
      f(T + 0.5 * h * a1, q + 0.5 * h * b1, a2, b2);
      f(T + 0.5 * h * a2, q + 0.5 * h * b2, a3, b3);
      f(T + h * a3, q + h * b3, a4, b4);
      T += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
      q += h / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
      x = (i + 1) * h;
      record(x, T);
    }
    return T;
  };
  // T(L) increases with q0; bracket then bisect. A NaN end value means the
  // trial flux was far too negative (k underflowed), which g > 0 treats as low.
  double lo = -2.0 * std::abs(r) * L - 1.0, hi = 2.0 * std::abs(r) * L + 1.0;
  auto g = [&](double q0) { return integrate(q0, nullptr) - T_right; };
  if (g(lo) > 0.0 || g(hi) < 0.0) throw std::runtime_error("shooting bracket failed");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(hi) + 1e-300; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  std::vector<double> out;
  integrate(0.5 * (lo + hi), &out);
  return out;
}

}  // namespace oracle
