#include "tedfem/mesh.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tedfem/error.hpp"

namespace tedfem {

Mesh1D::Mesh1D(std::vector<double> node_coords, double area)
    : nodes_(std::move(node_coords)), area_(area) {
  if (nodes_.size() < 2) throw Error(ErrorCode::InvalidMesh, "mesh needs at least two nodes");
  if (!(std::isfinite(area_) && area_ > 0.0))
    throw Error(ErrorCode::InvalidMesh, "mesh area must be positive");
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(nodes_[i + 1]) || !(nodes_[i + 1] > nodes_[i]))
      throw Error(ErrorCode::InvalidMesh,
                  "mesh nodes must be strictly increasing (index " + std::to_string(i) + ")");
  }
}

Mesh1D uniform_mesh(double L0, int n, double area) {
  if (!(std::isfinite(L0) && L0 > 0.0)) throw Error(ErrorCode::InvalidMesh, "length must be positive");
  if (n < 1) throw Error(ErrorCode::InvalidMesh, "element count must be >= 1");
  if (!(std::isfinite(area) && area > 0.0)) throw Error(ErrorCode::InvalidMesh, "area must be positive");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) x[static_cast<std::size_t>(i)] = L0 * i / n;
  x.back() = L0;
  return Mesh1D(std::move(x), area);
}

ShapeValues shape_values(double xi, double h) {
  return ShapeValues{{0.5 * (1.0 - xi), 0.5 * (1.0 + xi)}, {-1.0 / h, 1.0 / h}};
}

QuadRule QuadRule::gauss(int n) {
  if (n < 1 || n > 64) throw Error(ErrorCode::InvalidArgument, "quadrature order must be in [1, 64]");
  QuadRule rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  // Newton iteration on P_n from the Chebyshev-like initial guess; roots are
  // symmetric so only half are computed.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      const double pn = (n == 1) ? x : p1;
      const double pnm1 = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    const double pn = (n == 1) ? x : p1;
    const double pnm1 = (n == 1) ? 1.0 : p0;
    dp = n * (x * pn - pnm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.points[lo] = -x;
    rule.points[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

}  // namespace tedfem
