#include "tedfem/analysis.hpp"

#include <cmath>

#include "tedfem/error.hpp"

namespace tedfem {

namespace {

Mesh1D scaled(const Mesh1D& mesh, const Scales& s) {
  std::vector<double> x(mesh.nodes().begin(), mesh.nodes().end());
  for (auto& xi : x) xi /= s.length;
  return Mesh1D(std::move(x), mesh.area() / s.area);
}

}  // namespace

Mesh1D ProblemSpec::mesh() const {
  if (!nodes.empty()) return Mesh1D(nodes, area);
  return uniform_mesh(length, n_elem, area);
}

void ProblemSpec::validate() const {
  material.validate();
  laws.validate();
  bcs.validate();
  program.validate();
  (void)mesh();
  if (!(solver.tol > 0.0) || solver.max_iter < 1 || solver.quad_points < 1)
    throw Error(ErrorCode::InvalidArgument, "solver options need tol > 0, max_iter >= 1, quad_points >= 1");
  if (!bcs.has_fixed_end() && program.prestrain == 0.0)
    throw Error(ErrorCode::InvalidArgument, "at least one end must be mechanically fixed");
}

ProblemSpec uncoupled_reference(const ProblemSpec& spec, double length) {
  ProblemSpec ref = spec;
  ref.length = length;
  ref.nodes.clear();
  ref.material.alpha0 = 0.0;
  ref.laws = MaterialLaws{};
  ref.program.prestrain = 0.0;
  ref.program.heat_source = 0.0;
  ref.program.power_per_length = 0.0;
  ref.program.body_force = 0.0;
  for (auto* e : {&ref.bcs.mech_left, &ref.bcs.mech_right}) {
    if (auto* f = std::get_if<Free>(e)) f->traction = 0.0;
    if (auto* f = std::get_if<Fixed>(e)) f->displacement = 0.0;
  }
  for (auto* e : {&ref.bcs.therm_left, &ref.bcs.therm_right}) {
    if (std::holds_alternative<Flux>(*e)) *e = Adiabatic{};
    if (auto* t = std::get_if<Isothermal>(e)) t->temperature = ref.material.T0;
  }
  return ref;
}

Analysis::Analysis(ProblemSpec spec)
    : spec_(std::move(spec)),
      scales_(),
      mesh_(spec_.mesh()),
      scaled_mesh_(mesh_),
      scaled_material_(spec_.material),
      scaled_laws_(spec_.laws),
      scaled_bcs_(spec_.bcs),
      scaled_program_(spec_.program) {
  spec_.validate();
  scales_ = spec_.nondimensionalize
                ? Scales::characteristic(spec_.material, mesh_.length(), mesh_.area())
                : Scales::identity();
  scaled_mesh_ = scaled(mesh_, scales_);
  scaled_material_ = scale(spec_.material, scales_);
  scaled_laws_ = scale(spec_.laws, scales_);
  scaled_bcs_ = scale(spec_.bcs, scales_);
  scaled_program_ = scale(spec_.program, mesh_.area(), scales_);
}

const BaseState& Analysis::solve_static() {
  if (!scaled_state_) {
    scaled_state_ = tedfem::solve_static(scaled_mesh_, scaled_material_, scaled_laws_,
                                         scaled_bcs_, scaled_program_, spec_.solver);
    state_ = unscale(*scaled_state_, scales_);
  }
  return *state_;
}

StateSpaceOperator Analysis::state_space() {
  solve_static();
  // A prestrained end stays clamped at its stretched position.
  const BoundaryConditions bcs =
      static_boundary_conditions(scaled_bcs_, scaled_program_, scaled_mesh_.length());
  const QuadRule quad = QuadRule::gauss(spec_.solver.quad_points);
  const AssembledSystem sys =
      assemble(scaled_mesh_, *scaled_state_, scaled_material_, scaled_laws_, bcs,
               VolumeLoads{scaled_program_.heat_source, scaled_program_.body_force}, nullptr,
               AssemblyOptions{&quad, {}, false});
  return build_state_space(sys);
}

EigenResult Analysis::modal(double omega0_ref) {
  const StateSpaceOperator op = state_space();
  const Spectrum spec = spectrum(op, true);
  const double t = scales_.time;
  const double L = spec_.nondimensionalize ? 1.0 : mesh_.length();
  const double c = std::sqrt(spec_.material.Y0 / spec_.material.rho0);
  // Characteristic magnitudes expressed in solver units.
  const ModeScales ms{L, spec_.nondimensionalize ? 1.0 : c,
                      spec_.nondimensionalize ? 1.0 : spec_.material.T0};
  EigenResult res = extract_q(spec, op, omega0_ref > 0.0 ? omega0_ref * t : 0.0, ms);
  for (auto& l : res.eigenvalues) l /= t;
  res.fundamental /= t;
  res.omega /= t;
  res.omega0_ref = omega0_ref > 0.0 ? omega0_ref : 0.0;
  return res;
}

}  // namespace tedfem
