#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

#include "tedfem/material.hpp"
#include "tedfem/mesh.hpp"

namespace tedfem {

struct ElementGeometry {
  double x_left = 0.0;
  double x_right = 0.0;
  double area = 0.0;

  double length() const noexcept { return x_right - x_left; }
};

/// Linearization point restricted to one element.
struct ElementState {
  std::array<double, 2> u1{};
  std::array<double, 2> T1{};
  std::span<const double> S1_qp;  // one entry per quadrature point
};

struct ElementMatrices {
  Eigen::Matrix2d Muu, Kuu, Kut, Dtt, Dtu, Ktt;
  // Out-of-balance vectors at the linearization point: body force minus
  // internal force, and heat source plus internal conduction flux.
  Eigen::Vector2d fu, ht;
};

struct VolumeLoads {
  double heat_source = 0.0;  // volumetric [W/m^3]
  double body_force = 0.0;   // per unit mass [N/kg]
};

/// All matrices and vectors of the incremental coupled formulation for one
/// element. Properties are evaluated at each quadrature point from the
/// interpolated T1 and du1/dx.
ElementMatrices element_matrices(const ElementGeometry& geom, const ElementState& state,
                                 const MaterialBaseline& base, const MaterialLaws& laws,
                                 const QuadRule& quad, const VolumeLoads& loads);

struct IncrementalStrain {
  double e = 0.0;      // part linear in the increment
  double gamma = 0.0;  // quadratic part
};

/// Green-Lagrange strain increment at xi for the nodal displacement
/// increment u_inc on top of state.u1.
IncrementalStrain incremental_strain_measures(std::array<double, 2> u_inc,
                                              const ElementState& state, double h, double xi);

/// S2 = S1 + Y (e + gamma) + M theta, with Y and M taken at `at`.
double stress_update(double S1, IncrementalStrain eps, double theta,
                     const MaterialBaseline& base, const MaterialLaws& laws, LocalState at);

/// Derivative of the conduction flux integral with respect to T and to u
/// through k(T, du/dx). Zero for constant conductivity. Only the static
/// Newton solver uses these; the modal system keeps Ktt alone.
struct ConductionTangent {
  Eigen::Matrix2d Ktt_k;  // d/dT_j of int k T' phi_i'
  Eigen::Matrix2d Ktu_k;  // d/du_j of int k T' phi_i'
};

ConductionTangent conduction_tangent(const ElementGeometry& geom, const ElementState& state,
                                     const MaterialBaseline& base, const MaterialLaws& laws,
                                     const QuadRule& quad);

}  // namespace tedfem
