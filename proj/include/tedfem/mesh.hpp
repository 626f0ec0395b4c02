#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace tedfem {

/// Reference-configuration mesh of 2-node line elements.
class Mesh1D {
 public:
  /// Nodes must be strictly increasing with at least two entries.
  Mesh1D(std::vector<double> node_coords, double area);

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::size_t n_nodes() const noexcept { return nodes_.size(); }
  std::size_t n_elem() const noexcept { return nodes_.size() - 1; }
  double area() const noexcept { return area_; }
  double length() const noexcept { return nodes_.back() - nodes_.front(); }
  double element_length(std::size_t e) const { return nodes_[e + 1] - nodes_[e]; }

 private:
  std::vector<double> nodes_;
  double area_;
};

/// n equispaced elements spanning [0, L0]; throws InvalidMesh otherwise.
Mesh1D uniform_mesh(double L0, int n, double area);

struct ShapeValues {
  std::array<double, 2> N;
  std::array<double, 2> dN_dx;
};

/// Linear Lagrange functions on xi in [-1, 1] for an element of length h.
ShapeValues shape_values(double xi, double h);

/// Gauss-Legendre rule on [-1, 1].
struct QuadRule {
  std::vector<double> points;
  std::vector<double> weights;

  static QuadRule gauss(int n);
  std::size_t size() const noexcept { return points.size(); }
};

}  // namespace tedfem
