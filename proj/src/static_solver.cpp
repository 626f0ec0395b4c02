#include "tedfem/static_solver.hpp"

#include <cmath>
#include <sstream>

#include "tedfem/element.hpp"
#include "tedfem/error.hpp"

namespace tedfem {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

BoundaryConditions ramp(const BoundaryConditions& bcs, double factor, double T_init) {
  BoundaryConditions out = bcs;
  auto mech = [&](MechanicalEnd& e) {
    if (auto* f = std::get_if<Fixed>(&e)) f->displacement *= factor;
    if (auto* f = std::get_if<Free>(&e)) f->traction *= factor;
  };
  auto therm = [&](ThermalEnd& e) {
    if (auto* t = std::get_if<Isothermal>(&e)) t->temperature = T_init + factor * (t->temperature - T_init);
    if (auto* q = std::get_if<Flux>(&e)) q->inflow *= factor;
  };
  mech(out.mech_left);
  mech(out.mech_right);
  therm(out.therm_left);
  therm(out.therm_right);
  return out;
}

double flux_of(const ThermalEnd& e) {
  const auto* q = std::get_if<Flux>(&e);
  return q ? q->inflow : 0.0;
}

/// Recomputes quadrature stresses of `cur` from the step start.
void update_stresses(const Mesh1D& mesh, const QuadRule& quad, const MaterialBaseline& base,
                     const MaterialLaws& laws, const BaseState& start, BaseState& cur) {
  for (std::size_t e = 0; e < mesh.n_elem(); ++e) {
    const double h = mesh.element_length(e);
    const ElementState es{{start.u1[e], start.u1[e + 1]}, {start.T1[e], start.T1[e + 1]},
                          start.S1_qp[e]};
    const std::array<double, 2> du{cur.u1[e] - start.u1[e], cur.u1[e + 1] - start.u1[e + 1]};
    for (std::size_t g = 0; g < quad.size(); ++g) {
      const double xi = quad.points[g];
      const ShapeValues s = shape_values(xi, h);
      const double T_start = s.N[0] * start.T1[e] + s.N[1] * start.T1[e + 1];
      const double T_cur = s.N[0] * cur.T1[e] + s.N[1] * cur.T1[e + 1];
      const double du1 = s.dN_dx[0] * start.u1[e] + s.dN_dx[1] * start.u1[e + 1];
      const IncrementalStrain eps = incremental_strain_measures(du, es, h, xi);
      cur.S1_qp[e][g] = stress_update(start.S1_qp[e][g], eps, T_cur - T_start, base, laws,
                                      LocalState{T_start, du1});
    }
  }
}

}  // namespace

void LoadProgram::validate() const {
  if (n_steps < 1) throw Error(ErrorCode::InvalidArgument, "load program needs n_steps >= 1");
  if (!std::isfinite(prestrain) || !std::isfinite(heat_source) ||
      !std::isfinite(power_per_length) || !std::isfinite(body_force))
    throw Error(ErrorCode::InvalidArgument, "load program values must be finite");
  if (prestrain <= -1.0) throw Error(ErrorCode::InvalidArgument, "prestrain must exceed -1");
}

BoundaryConditions static_boundary_conditions(const BoundaryConditions& bcs,
                                              const LoadProgram& program, double length) {
  BoundaryConditions out = bcs;
  if (program.prestrain != 0.0) out.mech_right = Fixed{program.prestrain * length};
  return out;
}

BaseState solve_static(const Mesh1D& mesh, const MaterialBaseline& base,
                       const MaterialLaws& laws, const BoundaryConditions& bcs_in,
                       const LoadProgram& program, const SolverOptions& options) {
  base.validate();
  laws.validate();
  bcs_in.validate();
  program.validate();
  if (!(options.tol > 0.0) || options.max_iter < 1)
    throw Error(ErrorCode::InvalidArgument, "solver needs tol > 0 and max_iter >= 1");

  const BoundaryConditions bcs = static_boundary_conditions(bcs_in, program, mesh.length());
  if (!bcs.has_fixed_end())
    throw Error(ErrorCode::InvalidArgument, "static solve needs at least one fixed end");

  const QuadRule quad = QuadRule::gauss(options.quad_points);
  const std::size_t nn = mesh.n_nodes();
  const auto N = static_cast<Index>(nn);
  const double A = mesh.area();
  const double r_total = program.total_heat_source(A);

  // Without an isothermal end the temperature level is fixed by holding the
  // nodal mean; that only admits a steady state when the net heat input is zero.
  const bool pin_mean_temperature = !bcs.has_isothermal_end();
  if (pin_mean_temperature) {
    const double q_in = (flux_of(bcs.therm_left) + flux_of(bcs.therm_right)) * A;
    const double source = r_total * mesh.length() * A;
    const double scale = std::abs(q_in) + std::abs(source) + std::abs(flux_of(bcs.therm_left) * A) +
                         std::abs(flux_of(bcs.therm_right) * A);
    if (std::abs(q_in + source) > 1e-12 * scale)
      throw Error(ErrorCode::SingularTangent,
                  "no steady temperature: net heat input is nonzero and no end is isothermal");
  }

  const double ref_u = base.Y0 * A;
  const double ref_t = base.k0 * A * base.T0 / mesh.length();

  BaseState state = BaseState::reference(nn, mesh.n_elem(), quad.size(), base.T0);
  state.converged = false;
  Eigen::VectorXd fu_last, ht_last;

  for (int step = 1; step <= program.n_steps; ++step) {
    const double factor = static_cast<double>(step) / program.n_steps;
    const BoundaryConditions step_bcs = ramp(bcs, factor, base.T0);
    const VolumeLoads loads{factor * r_total, factor * program.body_force};
    const DirichletLift lift = dirichlet_lift(step_bcs, mesh);

    std::vector<char> u_dir(nn, 0), t_dir(nn, 0);
    for (std::size_t i = 0; i < nn; ++i) {
      u_dir[i] = lift.u[i].has_value();
      t_dir[i] = lift.T[i].has_value();
    }
    std::vector<Index> free_dofs, dir_dofs;  // combined index: u node i -> i, theta node i -> N + i
    for (std::size_t i = 0; i < nn; ++i) (u_dir[i] ? dir_dofs : free_dofs).push_back(static_cast<Index>(i));
    for (std::size_t i = 0; i < nn; ++i)
      (t_dir[i] ? dir_dofs : free_dofs).push_back(N + static_cast<Index>(i));

    const BaseState start = state;
    bool step_converged = false;
    double last_norm = 0.0;
    for (int iter = 0; iter <= options.max_iter; ++iter) {
      GlobalSystem g;
      try {
        g = assemble_global(mesh, state, base, laws, step_bcs, loads,
                            AssemblyOptions{&quad, {}, true});
      } catch (const Error& err) {
        if (err.code() == ErrorCode::NonPositiveConductivity)
          throw Error(ErrorCode::SingularTangent, std::string("static tangent lost: ") + err.what());
        throw;
      }
      const DirichletIncrements inc = dirichlet_increments(lift, state);

      VectorXd R(2 * N);
      R << g.fu, g.ht;
      double ru = 0.0, rt = 0.0;
      for (const Index d : free_dofs) (d < N ? ru : rt) += R(d) * R(d);
      last_norm = std::max(std::sqrt(ru) / ref_u, std::sqrt(rt) / ref_t);
      state.residual_norms.push_back(last_norm);
      const bool lifted = inc.du.cwiseAbs().maxCoeff() == 0.0 && inc.dtheta.cwiseAbs().maxCoeff() == 0.0;
      if (lifted && last_norm <= options.tol) {
        step_converged = true;
        fu_last = g.fu;
        ht_last = g.ht;
        break;
      }
      if (iter == options.max_iter) break;

      MatrixXd K(2 * N, 2 * N);
      K << g.Kuu, g.Kut, g.Ktu_k, g.Ktt + g.Ktt_k;
      VectorXd d_dir(2 * N);
      d_dir << inc.du, inc.dtheta;

      const auto nf = static_cast<Index>(free_dofs.size());
      const Index extra = pin_mean_temperature ? 1 : 0;
      MatrixXd Kff = MatrixXd::Zero(nf + extra, nf + extra);
      VectorXd rhs = VectorXd::Zero(nf + extra);
      for (Index a = 0; a < nf; ++a) {
        const Index ia = free_dofs[static_cast<std::size_t>(a)];
        rhs(a) = R(ia);
        for (Index b = 0; b < nf; ++b) Kff(a, b) = K(ia, free_dofs[static_cast<std::size_t>(b)]);
        for (const Index d : dir_dofs) rhs(a) -= K(ia, d) * d_dir(d);
      }
      if (pin_mean_temperature) {
        // Lagrange row: sum of theta increments is zero; scaled to the
        // conduction block so the pivoting stays balanced.
        const double w = g.Ktt.cwiseAbs().maxCoeff();
        for (Index a = 0; a < nf; ++a) {
          if (free_dofs[static_cast<std::size_t>(a)] >= N) {
            Kff(a, nf) = w;
            Kff(nf, a) = w;
          }
        }
      }

      Eigen::PartialPivLU<MatrixXd> lu(Kff);
      const double rcond = lu.rcond();
      if (!(rcond > 1e-15)) {
        std::ostringstream msg;
        msg << "singular static tangent at step " << step << ", iteration " << iter
            << " (rcond " << rcond << ")";
        throw Error(ErrorCode::SingularTangent, msg.str());
      }
      const VectorXd delta = lu.solve(rhs);

      VectorXd full = d_dir;
      for (Index a = 0; a < nf; ++a) full(free_dofs[static_cast<std::size_t>(a)]) = delta(a);
      for (std::size_t i = 0; i < nn; ++i) {
        state.u1[i] += full(static_cast<Index>(i));
        state.T1[i] += full(N + static_cast<Index>(i));
      }
      if (!full.allFinite()) throw Error(ErrorCode::SingularTangent, "non-finite Newton update");
      for (const double T : state.T1) {
        if (!(T > 0.0)) {
          std::ostringstream msg;
          msg << "temperature left the admissible range at step " << step << ", iteration " << iter;
          throw Error(ErrorCode::NoConvergence, msg.str());
        }
      }
      update_stresses(mesh, quad, base, laws, start, state);
    }
    if (!step_converged) {
      std::ostringstream msg;
      msg << "static solve did not converge: step " << step << " of " << program.n_steps
          << ", " << options.max_iter << " iterations, scaled residual " << last_norm;
      throw Error(ErrorCode::NoConvergence, msg.str());
    }
  }

  if (fu_last.size() == 0) {
    // n_steps >= 1 always produces a converged assembly; keep the vectors sized regardless
    fu_last = VectorXd::Zero(N);
    ht_last = VectorXd::Zero(N);
  }
  const DirichletLift final_lift = dirichlet_lift(bcs, mesh);
  for (std::size_t i = 0; i < nn; ++i) {
    if (final_lift.u[i]) state.reactions[i] = -fu_last(static_cast<Index>(i));
    if (final_lift.T[i]) state.boundary_heat[i] = -ht_last(static_cast<Index>(i));
  }
  state.converged = true;
  return state;
}

}  // namespace tedfem
