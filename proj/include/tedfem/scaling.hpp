#pragma once

#include "tedfem/assembly.hpp"
#include "tedfem/material.hpp"
#include "tedfem/state.hpp"
#include "tedfem/static_solver.hpp"

namespace tedfem {

/// Unit system used inside the solver. Quantities are divided by these
/// reference values before assembly and multiplied back afterwards.
struct Scales {
  double length = 1.0;       // [m]
  double time = 1.0;         // [s]
  double temperature = 1.0;  // [K]
  double stress = 1.0;       // [Pa]
  double area = 1.0;         // [m^2]

  static Scales identity() { return {}; }
  /// Bar length, acoustic transit time L / sqrt(Y0 / rho0), T0, Y0 and the
  /// cross-section area. Every block of the coupled system becomes O(1) up
  /// to the coupling strength.
  static Scales characteristic(const MaterialBaseline& m, double length, double area);

  double force() const { return stress * area; }
  double power() const { return stress * area * length / time; }
  double volumetric_power() const { return stress / time; }
};

MaterialBaseline scale(const MaterialBaseline& m, const Scales& s);
MaterialLaws scale(const MaterialLaws& l, const Scales& s);
BoundaryConditions scale(const BoundaryConditions& bcs, const Scales& s);
/// The result carries the whole volumetric source in heat_source.
LoadProgram scale(const LoadProgram& p, double physical_area, const Scales& s);

/// Converts a solver-unit base state back to SI.
BaseState unscale(const BaseState& state, const Scales& s);

}  // namespace tedfem
