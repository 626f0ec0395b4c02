#pragma once

#include <cstddef>
#include <vector>

namespace tedfem {

/// Known configuration C1 about which increments are linearized.
struct BaseState {
  std::vector<double> u1;                 // nodal displacement [m]
  std::vector<double> T1;                 // nodal absolute temperature [K]
  std::vector<std::vector<double>> S1_qp;  // second Piola-Kirchhoff stress per element, per quadrature point [Pa]
  bool converged = false;
  std::vector<double> residual_norms;     // scaled residual at every Newton check, all steps

  // Support force exerted on the bar at mechanical Dirichlet nodes [N], and
  // heat entering through thermal Dirichlet nodes [W]; zero elsewhere.
  std::vector<double> reactions;
  std::vector<double> boundary_heat;

  /// Undeformed, stress-free state at uniform temperature.
  static BaseState reference(std::size_t n_nodes, std::size_t n_elem, std::size_t n_qp,
                             double temperature);
};

}  // namespace tedfem
