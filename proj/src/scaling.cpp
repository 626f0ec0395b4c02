#include "tedfem/scaling.hpp"

#include <cmath>

namespace tedfem {

Scales Scales::characteristic(const MaterialBaseline& m, double length, double area) {
  Scales s;
  s.length = length;
  s.time = length / std::sqrt(m.Y0 / m.rho0);
  s.temperature = m.T0;
  s.stress = m.Y0;
  s.area = area;
  return s;
}

MaterialBaseline scale(const MaterialBaseline& m, const Scales& s) {
  MaterialBaseline out = m;
  const double rho = m.rho0 * s.length * s.length / (s.stress * s.time * s.time);
  out.Y0 = m.Y0 / s.stress;
  out.rho0 = rho;
  out.alpha0 = m.alpha0 * s.temperature;
  out.k0 = m.k0 * s.temperature * s.time / (s.stress * s.length * s.length);
  out.cv0 = m.rho0 * m.cv0 * s.temperature / (s.stress * rho);
  out.T0 = m.T0 / s.temperature;
  return out;
}

MaterialLaws scale(const MaterialLaws& l, const Scales& s) {
  return MaterialLaws{l.upsilon * s.temperature, l.beta * s.temperature, l.chi};
}

BoundaryConditions scale(const BoundaryConditions& bcs, const Scales& s) {
  BoundaryConditions out = bcs;
  auto mech = [&](MechanicalEnd& e) {
    if (auto* f = std::get_if<Fixed>(&e)) f->displacement /= s.length;
    if (auto* f = std::get_if<Free>(&e)) f->traction /= s.stress;
  };
  auto therm = [&](ThermalEnd& e) {
    if (auto* t = std::get_if<Isothermal>(&e)) t->temperature /= s.temperature;
    if (auto* q = std::get_if<Flux>(&e)) q->inflow *= s.time / (s.stress * s.length);
  };
  mech(out.mech_left);
  mech(out.mech_right);
  therm(out.therm_left);
  therm(out.therm_right);
  return out;
}

LoadProgram scale(const LoadProgram& p, double physical_area, const Scales& s) {
  LoadProgram out = p;
  out.heat_source = p.total_heat_source(physical_area) / s.volumetric_power();
  out.power_per_length = 0.0;
  out.body_force = p.body_force * s.time * s.time / s.length;
  return out;
}

BaseState unscale(const BaseState& state, const Scales& s) {
  BaseState out = state;
  for (auto& u : out.u1) u *= s.length;
  for (auto& T : out.T1) T *= s.temperature;
  for (auto& elem : out.S1_qp)
    for (auto& S : elem) S *= s.stress;
  for (auto& f : out.reactions) f *= s.force();
  for (auto& q : out.boundary_heat) q *= s.power();
  return out;
}

}  // namespace tedfem
