#include "tedfem/tedfem.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "tedfem/analysis.hpp"
#include "tedfem/error.hpp"
#include "tedfem/reference.hpp"

struct tedfem_problem {
  explicit tedfem_problem(tedfem::ProblemSpec spec) : analysis(std::move(spec)) {}
  tedfem::Analysis analysis;
  std::optional<tedfem::EigenResult> modal;
};

namespace {

thread_local std::string g_last_error;

tedfem_status to_status(tedfem::ErrorCode code) {
  using tedfem::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TEDFEM_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidMesh: return TEDFEM_ERR_INVALID_MESH;
    case ErrorCode::NonPositiveConductivity: return TEDFEM_ERR_NONPOSITIVE_CONDUCTIVITY;
    case ErrorCode::SingularSystem: return TEDFEM_ERR_SINGULAR_SYSTEM;
    case ErrorCode::NoConvergence: return TEDFEM_ERR_NO_CONVERGENCE;
    case ErrorCode::SingularTangent: return TEDFEM_ERR_SINGULAR_TANGENT;
    case ErrorCode::SingularMass: return TEDFEM_ERR_SINGULAR_MASS;
    case ErrorCode::NoConvergenceQR: return TEDFEM_ERR_EIGEN_NO_CONVERGENCE;
    case ErrorCode::NoMechanicalMode: return TEDFEM_ERR_NO_MECHANICAL_MODE;
  }
  return TEDFEM_ERR_INTERNAL;
}

tedfem_status fail(tedfem_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
tedfem_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const tedfem::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(TEDFEM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TEDFEM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(TEDFEM_ERR_INTERNAL, "unknown exception");
  }
}

tedfem::MechanicalEnd mech_end(const tedfem_end& e) {
  switch (e.mech) {
    case TEDFEM_MECH_FIXED: return tedfem::Fixed{e.mech_value};
    case TEDFEM_MECH_FREE: return tedfem::Free{e.mech_value};
    default: throw tedfem::Error(tedfem::ErrorCode::InvalidArgument, "unknown mechanical end kind");
  }
}

tedfem::ThermalEnd therm_end(const tedfem_end& e) {
  switch (e.therm) {
    case TEDFEM_THERM_ISOTHERMAL: return tedfem::Isothermal{e.therm_value};
    case TEDFEM_THERM_ADIABATIC: return tedfem::Adiabatic{};
    case TEDFEM_THERM_FLUX: return tedfem::Flux{e.therm_value};
    default: throw tedfem::Error(tedfem::ErrorCode::InvalidArgument, "unknown thermal end kind");
  }
}

tedfem::ProblemSpec to_spec(const tedfem_problem_desc* d) {
  if (!d) throw tedfem::Error(tedfem::ErrorCode::InvalidArgument, "null problem description");
  tedfem::ProblemSpec s;
  s.material = {d->Y0, d->nu, d->rho0, d->alpha0, d->k0, d->cv0, d->T0};
  s.laws = {d->upsilon, d->beta, d->chi};
  s.length = d->length;
  s.area = d->area;
  s.n_elem = d->n_elem;
  if (d->nodes) s.nodes.assign(d->nodes, d->nodes + d->n_nodes);
  s.bcs.mech_left = mech_end(d->left);
  s.bcs.mech_right = mech_end(d->right);
  s.bcs.therm_left = therm_end(d->left);
  s.bcs.therm_right = therm_end(d->right);
  s.program.prestrain = d->prestrain;
  s.program.heat_source = d->heat_source;
  s.program.power_per_length = d->power_per_length;
  s.program.body_force = d->body_force;
  s.program.n_steps = d->n_steps;
  s.solver.tol = d->tol;
  s.solver.max_iter = d->max_iter;
  s.solver.quad_points = d->quad_points;
  s.nondimensionalize = d->nondimensionalize != 0;
  return s;
}

tedfem_status copy_nodal(const tedfem_problem* p, const std::vector<double>& v, double* out,
                         size_t n) {
  if (!out) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null output buffer");
  if (n != v.size())
    return fail(TEDFEM_ERR_BUFFER_SIZE, "buffer length " + std::to_string(n) + " != node count " +
                                            std::to_string(v.size()));
  (void)p;
  std::copy(v.begin(), v.end(), out);
  return TEDFEM_OK;
}

template <class Get>
tedfem_status get_state_array(const tedfem_problem* p, double* out, size_t n, Get get) {
  return guarded([&] {
    if (!p) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null problem handle");
    if (!p->analysis.solved()) return fail(TEDFEM_ERR_NOT_SOLVED, "static state not solved");
    // solve_static() is a cached lookup once solved
    auto& a = const_cast<tedfem::Analysis&>(p->analysis);
    return copy_nodal(p, get(a.solve_static()), out, n);
  });
}

}  // namespace

extern "C" {

TEDFEM_API void tedfem_problem_desc_init(tedfem_problem_desc* d) {
  if (!d) return;
  const tedfem::ProblemSpec s;
  *d = tedfem_problem_desc{};
  d->Y0 = s.material.Y0;
  d->nu = s.material.nu;
  d->rho0 = s.material.rho0;
  d->alpha0 = s.material.alpha0;
  d->k0 = s.material.k0;
  d->cv0 = s.material.cv0;
  d->T0 = s.material.T0;
  d->length = s.length;
  d->area = s.area;
  d->n_elem = s.n_elem;
  d->left = tedfem_end{TEDFEM_MECH_FIXED, 0.0, TEDFEM_THERM_ISOTHERMAL, s.material.T0};
  d->right = d->left;
  d->n_steps = s.program.n_steps;
  d->tol = s.solver.tol;
  d->max_iter = s.solver.max_iter;
  d->quad_points = s.solver.quad_points;
  d->nondimensionalize = 1;
}

TEDFEM_API tedfem_status tedfem_problem_validate(const tedfem_problem_desc* desc) {
  return guarded([&] {
    to_spec(desc).validate();
    return TEDFEM_OK;
  });
}

TEDFEM_API tedfem_status tedfem_problem_create(const tedfem_problem_desc* desc,
                                               tedfem_problem** out) {
  return guarded([&] {
    if (!out) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null output handle");
    *out = nullptr;
    auto p = std::make_unique<tedfem_problem>(to_spec(desc));
    *out = p.release();
    return TEDFEM_OK;
  });
}

TEDFEM_API void tedfem_problem_destroy(tedfem_problem* problem) { delete problem; }

TEDFEM_API tedfem_status tedfem_solve_static(tedfem_problem* p) {
  return guarded([&] {
    if (!p) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null problem handle");
    p->analysis.solve_static();
    return TEDFEM_OK;
  });
}

TEDFEM_API size_t tedfem_node_count(const tedfem_problem* p) {
  return p ? p->analysis.mesh().n_nodes() : 0;
}

TEDFEM_API tedfem_status tedfem_get_nodes(const tedfem_problem* p, double* out, size_t n) {
  return guarded([&] {
    if (!p) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null problem handle");
    const auto nodes = p->analysis.mesh().nodes();
    return copy_nodal(p, std::vector<double>(nodes.begin(), nodes.end()), out, n);
  });
}

TEDFEM_API tedfem_status tedfem_get_displacement(const tedfem_problem* p, double* out, size_t n) {
  return get_state_array(p, out, n, [](const tedfem::BaseState& s) { return s.u1; });
}

TEDFEM_API tedfem_status tedfem_get_temperature(const tedfem_problem* p, double* out, size_t n) {
  return get_state_array(p, out, n, [](const tedfem::BaseState& s) { return s.T1; });
}

TEDFEM_API tedfem_status tedfem_get_reactions(const tedfem_problem* p, double* out, size_t n) {
  return get_state_array(p, out, n, [](const tedfem::BaseState& s) { return s.reactions; });
}

TEDFEM_API tedfem_status tedfem_get_boundary_heat(const tedfem_problem* p, double* out, size_t n) {
  return get_state_array(p, out, n, [](const tedfem::BaseState& s) { return s.boundary_heat; });
}

TEDFEM_API tedfem_status tedfem_get_residual_history(const tedfem_problem* p, double* out,
                                                     size_t capacity, size_t* count) {
  return guarded([&] {
    if (!p || !count) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null argument");
    if (!p->analysis.solved()) return fail(TEDFEM_ERR_NOT_SOLVED, "static state not solved");
    const auto& h = const_cast<tedfem::Analysis&>(p->analysis).solve_static().residual_norms;
    *count = h.size();
    if (out) std::copy_n(h.begin(), std::min(capacity, h.size()), out);
    return TEDFEM_OK;
  });
}

TEDFEM_API tedfem_status tedfem_modal(tedfem_problem* p, double omega0_ref,
                                      tedfem_modal_result* out) {
  return guarded([&] {
    if (!p || !out) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null argument");
    p->modal = p->analysis.modal(omega0_ref);
    const auto& r = *p->modal;
    *out = tedfem_modal_result{r.omega,
                               r.q_inverse,
                               r.shift,
                               r.omega0_ref,
                               r.fundamental.real(),
                               r.fundamental.imag(),
                               r.mechanical_fraction,
                               r.eigenvalues.size()};
    return TEDFEM_OK;
  });
}

TEDFEM_API tedfem_status tedfem_get_eigenvalues(const tedfem_problem* p, double* re, double* im,
                                                size_t capacity, size_t* count) {
  return guarded([&] {
    if (!p || !count) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null argument");
    if (!p->modal) return fail(TEDFEM_ERR_NOT_SOLVED, "modal analysis not run");
    const auto& ev = p->modal->eigenvalues;
    *count = ev.size();
    for (size_t i = 0; i < std::min(capacity, ev.size()); ++i) {
      if (re) re[i] = ev[i].real();
      if (im) im[i] = ev[i].imag();
    }
    return TEDFEM_OK;
  });
}

TEDFEM_API tedfem_status tedfem_reference_frequency(const tedfem_problem_desc* desc,
                                                    double length, double* omega) {
  return guarded([&] {
    if (!omega) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null output");
    tedfem::Analysis a(tedfem::uncoupled_reference(to_spec(desc), length));
    *omega = a.modal().omega;
    return TEDFEM_OK;
  });
}

TEDFEM_API double tedfem_stretch_force_per_area(double Y0, double stretch) {
  return tedfem::reference::stretch_force_per_area(Y0, stretch);
}

TEDFEM_API tedfem_status tedfem_conduction_shooting(double k0, double beta, double T0, double r,
                                                    double length, double T_left, double T_right,
                                                    const double* xs, size_t n, double* out) {
  return guarded([&] {
    if ((!xs || !out) && n > 0) return fail(TEDFEM_ERR_INVALID_ARGUMENT, "null buffer");
    const auto T = tedfem::reference::conduction_profile_shooting(
        k0, beta, T0, r, length, T_left, T_right, std::span<const double>(xs, n));
    std::copy(T.begin(), T.end(), out);
    return TEDFEM_OK;
  });
}

TEDFEM_API const char* tedfem_status_string(tedfem_status status) {
  switch (status) {
    case TEDFEM_OK: return "ok";
    case TEDFEM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TEDFEM_ERR_INVALID_MESH: return "invalid mesh";
    case TEDFEM_ERR_NONPOSITIVE_CONDUCTIVITY: return "nonpositive conductivity";
    case TEDFEM_ERR_SINGULAR_SYSTEM: return "singular system";
    case TEDFEM_ERR_NO_CONVERGENCE: return "no convergence";
    case TEDFEM_ERR_SINGULAR_TANGENT: return "singular tangent";
    case TEDFEM_ERR_SINGULAR_MASS: return "singular mass";
    case TEDFEM_ERR_EIGEN_NO_CONVERGENCE: return "eigensolver did not converge";
    case TEDFEM_ERR_NO_MECHANICAL_MODE: return "no mechanical mode";
    case TEDFEM_ERR_NOT_SOLVED: return "not solved";
    case TEDFEM_ERR_BUFFER_SIZE: return "buffer size mismatch";
    case TEDFEM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

TEDFEM_API const char* tedfem_last_error(void) { return g_last_error.c_str(); }

TEDFEM_API const char* tedfem_version(void) { return "1.0.0"; }

}  // extern "C"
