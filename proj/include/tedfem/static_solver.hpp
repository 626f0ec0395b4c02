#pragma once

#include "tedfem/assembly.hpp"
#include "tedfem/material.hpp"
#include "tedfem/mesh.hpp"
#include "tedfem/state.hpp"

namespace tedfem {

/// Loads reached at the end of the program. Every load, including boundary
/// tractions, fluxes and end temperatures from the boundary conditions, is
/// ramped linearly over n_steps.
struct LoadProgram {
  int n_steps = 10;
  double prestrain = 0.0;         // dL/L imposed at the right end [-]
  double heat_source = 0.0;       // volumetric [W/m^3]
  double power_per_length = 0.0;  // [W/m], converted to heat_source / area
  double body_force = 0.0;        // [N/kg]

  double total_heat_source(double area) const { return heat_source + power_per_length / area; }
  void validate() const;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 25;
  int quad_points = 3;
};

/// Boundary conditions actually used by the static solve: a nonzero
/// prestrain turns the right end into a prescribed displacement.
BoundaryConditions static_boundary_conditions(const BoundaryConditions& bcs,
                                              const LoadProgram& program, double length);

/// Incremental load stepping with Newton iteration on the coupled steady
/// equations. Within a step the linearization point is the last converged
/// state; stresses are integrated with stress_update from it.
///
/// Throws NoConvergence when a step fails to reach `tol` within max_iter,
/// SingularTangent when the tangent is singular (no steady state, conductivity
/// driven nonpositive).
BaseState solve_static(const Mesh1D& mesh, const MaterialBaseline& base,
                       const MaterialLaws& laws, const BoundaryConditions& bcs,
                       const LoadProgram& program, const SolverOptions& options = {});

}  // namespace tedfem
