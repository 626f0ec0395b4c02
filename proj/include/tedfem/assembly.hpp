#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "tedfem/element.hpp"
#include "tedfem/material.hpp"
#include "tedfem/mesh.hpp"
#include "tedfem/state.hpp"

namespace tedfem {

/// Prescribed end displacement (zero for a clamped end).
struct Fixed {
  double displacement = 0.0;
};
/// Traction is the normal stress on the end face, positive in tension.
struct Free {
  double traction = 0.0;
};
struct Isothermal {
  double temperature = 0.0;
};
struct Adiabatic {};
/// Heat flowing into the bar through the end face [W/m^2].
struct Flux {
  double inflow = 0.0;
};

using MechanicalEnd = std::variant<Fixed, Free>;
using ThermalEnd = std::variant<Isothermal, Adiabatic, Flux>;

struct BoundaryConditions {
  MechanicalEnd mech_left = Fixed{};
  MechanicalEnd mech_right = Fixed{};
  ThermalEnd therm_left = Isothermal{300.0};
  ThermalEnd therm_right = Isothermal{300.0};

  bool has_fixed_end() const noexcept;
  bool has_isothermal_end() const noexcept;
  void validate() const;
};

std::string mechanical_label(const BoundaryConditions& bcs);  // e.g. "fixed-free"
std::string thermal_label(const BoundaryConditions& bcs);     // e.g. "isothermal-adiabatic"

/// Unreduced global blocks over all nodes, u-DOFs and theta-DOFs both indexed
/// by node. Neumann data is already added to fu and ht.
struct GlobalSystem {
  Eigen::MatrixXd Muu, Kuu, Kut, Dtu, Dtt, Ktt;
  Eigen::VectorXd fu, ht;
  // Present only when requested; see conduction_tangent().
  Eigen::MatrixXd Ktt_k, Ktu_k;
};

struct DofMap {
  std::vector<std::size_t> u_nodes;  // retained displacement DOFs, by node
  std::vector<std::size_t> t_nodes;  // retained temperature DOFs, by node
  std::size_t n_nodes = 0;
};

/// Global blocks after elimination of Dirichlet DOFs. Ordering is all u then
/// all theta, matching the combined second-order system.
struct AssembledSystem {
  Eigen::MatrixXd Muu, Kuu, Kut, Dtu, Dtt, Ktt;
  Eigen::VectorXd fu, ht;
  DofMap dofs;
};

/// Absolute prescribed nodal values; nullopt where the DOF is free.
struct DirichletLift {
  std::vector<std::optional<double>> u;
  std::vector<std::optional<double>> T;
};

DirichletLift dirichlet_lift(const BoundaryConditions& bcs, const Mesh1D& mesh);

/// Prescribed increments relative to `state` (theta = T - T1 at isothermal nodes).
struct DirichletIncrements {
  Eigen::VectorXd du;      // full length n_nodes, zero at free DOFs
  Eigen::VectorXd dtheta;  // full length n_nodes, zero at free DOFs
};

DirichletIncrements dirichlet_increments(const DirichletLift& lift, const BaseState& state);

struct AssemblyOptions {
  const QuadRule* quad = nullptr;              // default: 3-point Gauss
  std::span<const std::size_t> element_order;  // default: 0..n_elem-1
  bool conduction_tangent = false;
};

GlobalSystem assemble_global(const Mesh1D& mesh, const BaseState& state,
                             const MaterialBaseline& base, const MaterialLaws& laws,
                             const BoundaryConditions& bcs, const VolumeLoads& loads,
                             const AssemblyOptions& opts = {});

/// Eliminates Dirichlet rows and columns; with `lift`, the prescribed
/// increments times the removed columns are moved to the right-hand side.
/// Throws SingularSystem if no displacement DOF remains.
AssembledSystem reduce(const GlobalSystem& global, const BoundaryConditions& bcs,
                       const DirichletIncrements* lift = nullptr);

AssembledSystem assemble(const Mesh1D& mesh, const BaseState& state,
                         const MaterialBaseline& base, const MaterialLaws& laws,
                         const BoundaryConditions& bcs, const VolumeLoads& loads,
                         const DirichletIncrements* lift = nullptr,
                         const AssemblyOptions& opts = {});

}  // namespace tedfem
