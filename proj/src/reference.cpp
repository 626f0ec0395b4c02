#include "tedfem/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <utility>

#include "tedfem/error.hpp"

namespace tedfem::reference {

double stretch_force_per_area(double Y0, double stretch) {
  return Y0 * (stretch + 0.5 * stretch * stretch) * (1.0 + stretch);
}

double fixed_free_frequency(double Y0, double rho0, double length) {
  return std::numbers::pi / (2.0 * length) * std::sqrt(Y0 / rho0);
}

double exponential_conduction_profile(double k0, double beta, double T0, double r,
                                      double length, double x) {
  const double w = r * x * (length - x) / (2.0 * k0);
  if (beta == 0.0) return T0 + w;
  return T0 + std::log1p(beta * w) / beta;
}

namespace {

struct Shot {
  std::vector<double> values;  // at requested points, in input order
  double end_value = 0.0;
};

// State (T, p) with p = k(T) dT/dx: T' = p / k(T), p' = -r.
Shot shoot(double k0, double beta, double T0, double r, double length, double T_left,
           double p0, std::span<const double> xs, int substeps) {
  auto k = [&](double T) { return k0 * std::exp(beta * (T - T0)); };
  auto dT = [&](double x, double T) { return (p0 - r * x) / k(T); };

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xs[a] < xs[b]; });

  Shot out;
  out.values.resize(xs.size());
  const double hmax = length / substeps;
  double x = 0.0, T = T_left;
  auto advance_to = [&](double target) {
    const int n = std::max(1, static_cast<int>(std::ceil((target - x) / hmax)));
    const double h = (target - x) / n;
    for (int i = 0; i < n; ++i) {
      const double k1 = dT(x, T);
      const double k2 = dT(x + 0.5 * h, T + 0.5 * h * k1);
      const double k3 = dT(x + 0.5 * h, T + 0.5 * h * k2);
      const double k4 = dT(x + h, T + h * k3);
      T += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x += h;
    }
    x = target;
  };
  for (const auto i : order) {
    if (xs[i] > x) advance_to(xs[i]);
    out.values[i] = T;
  }
  if (x < length) advance_to(length);
  out.end_value = T;
  return out;
}

}  // namespace

std::vector<double> conduction_profile_shooting(double k0, double beta, double T0, double r,
                                                double length, double T_left, double T_right,
                                                std::span<const double> xs) {
  for (const double x : xs)
    if (!(x >= 0.0 && x <= length))
      throw Error(ErrorCode::InvalidArgument, "shooting output point outside [0, L]");
  constexpr int substeps = 20000;
  const std::vector<double> none;
  auto miss = [&](double p0) {
    return shoot(k0, beta, T0, r, length, T_left, p0, none, substeps).end_value - T_right;
  };

  // Secant on the initial flux, started from the constant-conductivity value.
  const double kl = k0 * std::exp(beta * (T_left - T0));
  double pa = r * length / 2.0 + kl * (T_right - T_left) / length;
  double pb = pa * (1.0 + 1e-3) + 1e-6 * kl * T0 / length;
  const double tol = 1e-12 * std::max(std::abs(T_right), 1.0);
  double fa = miss(pa), fb = miss(pb);
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(pa, pb);
    std::swap(fa, fb);
  }
  for (int it = 0; it < 100 && std::abs(fb) > tol && fb != fa; ++it) {
    const double pc = pb - fb * (pb - pa) / (fb - fa);
    pa = pb;
    fa = fb;
    pb = pc;
    fb = miss(pb);
    if (!std::isfinite(fb)) throw Error(ErrorCode::NoConvergence, "shooting diverged");
  }
  if (!(std::abs(fb) <= tol))
    throw Error(ErrorCode::NoConvergence, "shooting did not meet the far boundary value");
  return shoot(k0, beta, T0, r, length, T_left, pb, xs, substeps).values;
}

}  // namespace tedfem::reference
