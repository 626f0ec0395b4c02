#include "tedfem/material.hpp"

#include <cmath>
#include <string>

#include "tedfem/error.hpp"

namespace tedfem {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

double temperature_factor(double exponent, double T0, double T1) {
  return std::exp(exponent * (T1 - T0));
}

}  // namespace

void MaterialBaseline::validate() const {
  require(std::isfinite(Y0) && Y0 > 0.0, "material: Y0 must be positive");
  require(std::isfinite(rho0) && rho0 > 0.0, "material: rho0 must be positive");
  require(std::isfinite(k0) && k0 > 0.0, "material: k0 must be positive");
  require(std::isfinite(cv0) && cv0 > 0.0, "material: cv0 must be positive");
  require(std::isfinite(T0) && T0 > 0.0, "material: T0 must be positive");
  require(std::isfinite(alpha0), "material: alpha0 must be finite");
  require(std::isfinite(nu), "material: nu must be finite");
}

void MaterialLaws::validate() const {
  require(std::isfinite(upsilon) && std::isfinite(beta) && std::isfinite(chi),
          "material laws: upsilon, beta and chi must be finite");
}

double young_modulus(const MaterialBaseline& b, const MaterialLaws& l, LocalState s) {
  return b.Y0 * temperature_factor(l.upsilon, b.T0, s.T1);
}

double conductivity(const MaterialBaseline& b, const MaterialLaws& l, LocalState s) {
  const double k = b.k0 * temperature_factor(l.beta, b.T0, s.T1) * (1.0 - l.chi * s.du_dx);
  if (!(k > 0.0)) {
    throw Error(ErrorCode::NonPositiveConductivity,
                "conductivity " + std::to_string(k) + " W/(m K) at du/dx=" +
                    std::to_string(s.du_dx) + ", T=" + std::to_string(s.T1));
  }
  return k;
}

double thermal_stress_modulus(const MaterialBaseline& b, const MaterialLaws& l,
                              LocalState s) {
  return -b.alpha0 * young_modulus(b, l, s);
}

double conductivity_dT(const MaterialBaseline& b, const MaterialLaws& l, LocalState s) {
  return l.beta * conductivity(b, l, s);
}

double conductivity_dstrain(const MaterialBaseline& b, const MaterialLaws& l,
                            LocalState s) {
  return -l.chi * b.k0 * temperature_factor(l.beta, b.T0, s.T1);
}

}  // namespace tedfem
