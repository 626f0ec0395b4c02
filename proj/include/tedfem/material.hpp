#pragma once

namespace tedfem {

/// Reference material constants. Defaults are bulk silicon at 300 K.
struct MaterialBaseline {
  double Y0 = 165e9;       // Young's modulus [Pa]
  double nu = 0.22;        // Poisson's ratio, not used by the axial kernel
  double rho0 = 2300.0;    // reference density [kg/m^3]
  double alpha0 = 2.6e-6;  // linear thermal expansion [1/K]
  double k0 = 159.0;       // thermal conductivity [W/(m K)]
  double cv0 = 713.0;      // specific heat [J/(kg K)]
  double T0 = 300.0;       // reference temperature [K]

  void validate() const;
};

/// Exponents of the parametric property laws
///   Y = Y0 exp(upsilon (T - T0))
///   k = k0 exp(beta (T - T0)) (1 - chi du/dx)
/// All zero gives the linear material.
struct MaterialLaws {
  double upsilon = 0.0;  // [1/K]
  double beta = 0.0;     // [1/K]
  double chi = 0.0;      // [-]

  void validate() const;
};

/// Linearization point seen by a quadrature point.
struct LocalState {
  double T1 = 0.0;     // absolute temperature [K]
  double du_dx = 0.0;  // reference displacement gradient [-]
};

double young_modulus(const MaterialBaseline& b, const MaterialLaws& l, LocalState s);

/// Throws Error(NonPositiveConductivity) once the strain law is driven past
/// 1 - chi du/dx <= 0.
double conductivity(const MaterialBaseline& b, const MaterialLaws& l, LocalState s);

/// One-dimensional thermal stress modulus M = -alpha0 Y(T1) [Pa/K].
double thermal_stress_modulus(const MaterialBaseline& b, const MaterialLaws& l,
                              LocalState s);

// Partial derivatives of conductivity; used only for the static Newton tangent.
double conductivity_dT(const MaterialBaseline& b, const MaterialLaws& l, LocalState s);
double conductivity_dstrain(const MaterialBaseline& b, const MaterialLaws& l,
                            LocalState s);

}  // namespace tedfem
