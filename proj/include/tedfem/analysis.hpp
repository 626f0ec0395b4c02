#pragma once

#include <optional>
#include <vector>

#include "tedfem/assembly.hpp"
#include "tedfem/eigen_analysis.hpp"
#include "tedfem/material.hpp"
#include "tedfem/mesh.hpp"
#include "tedfem/scaling.hpp"
#include "tedfem/state.hpp"
#include "tedfem/static_solver.hpp"

namespace tedfem {

/// Complete description of one bar problem in SI units.
struct ProblemSpec {
  MaterialBaseline material;
  MaterialLaws laws;
  double length = 100e-9;
  double area = 1e-16;
  int n_elem = 100;
  std::vector<double> nodes;  // optional explicit node set; overrides length and n_elem
  BoundaryConditions bcs;
  LoadProgram program;
  SolverOptions solver;
  bool nondimensionalize = true;

  Mesh1D mesh() const;
  void validate() const;
};

/// Problem with every load, law and the coupling removed, at another length:
/// its fundamental frequency is the reference for frequency shifts.
ProblemSpec uncoupled_reference(const ProblemSpec& spec, double length);

/// Static base state followed by modal analysis of the linearized system.
class Analysis {
 public:
  explicit Analysis(ProblemSpec spec);

  const ProblemSpec& spec() const noexcept { return spec_; }
  const Scales& scales() const noexcept { return scales_; }
  const Mesh1D& mesh() const noexcept { return mesh_; }

  /// Solves once and caches; SI units.
  const BaseState& solve_static();
  bool solved() const noexcept { return scaled_state_.has_value(); }

  /// Eigen-analysis about the base state (solving it first if needed).
  /// Eigenvalues and omega in rad/s; omega0_ref in rad/s, <= 0 for none.
  EigenResult modal(double omega0_ref = 0.0);

  /// Operator in solver units, exposed for diagnostics and tests.
  StateSpaceOperator state_space();

 private:
  ProblemSpec spec_;
  Scales scales_;
  Mesh1D mesh_;
  Mesh1D scaled_mesh_;
  MaterialBaseline scaled_material_;
  MaterialLaws scaled_laws_;
  BoundaryConditions scaled_bcs_;
  LoadProgram scaled_program_;
  std::optional<BaseState> scaled_state_;
  std::optional<BaseState> state_;
};

}  // namespace tedfem
