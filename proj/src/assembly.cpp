#include "tedfem/assembly.hpp"

#include <cmath>
#include <numeric>

#include "tedfem/error.hpp"

namespace tedfem {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool is_fixed(const MechanicalEnd& e) { return std::holds_alternative<Fixed>(e); }
bool is_isothermal(const ThermalEnd& e) { return std::holds_alternative<Isothermal>(e); }

const char* label(const MechanicalEnd& e) { return is_fixed(e) ? "fixed" : "free"; }
const char* label(const ThermalEnd& e) {
  return std::visit(overloaded{[](const Isothermal&) { return "isothermal"; },
                               [](const Adiabatic&) { return "adiabatic"; },
                               [](const Flux&) { return "flux"; }},
                    e);
}

Eigen::MatrixXd take(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& v, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(rows[i]));
  return out;
}

}  // namespace

bool BoundaryConditions::has_fixed_end() const noexcept {
  return is_fixed(mech_left) || is_fixed(mech_right);
}

bool BoundaryConditions::has_isothermal_end() const noexcept {
  return is_isothermal(therm_left) || is_isothermal(therm_right);
}

void BoundaryConditions::validate() const {
  auto finite_mech = [](const MechanicalEnd& e) {
    return std::visit(overloaded{[](const Fixed& f) { return std::isfinite(f.displacement); },
                                 [](const Free& f) { return std::isfinite(f.traction); }},
                      e);
  };
  auto finite_therm = [](const ThermalEnd& e) {
    return std::visit(
        overloaded{[](const Isothermal& t) { return std::isfinite(t.temperature) && t.temperature > 0.0; },
                   [](const Adiabatic&) { return true; },
                   [](const Flux& f) { return std::isfinite(f.inflow); }},
        e);
  };
  if (!finite_mech(mech_left) || !finite_mech(mech_right))
    throw Error(ErrorCode::InvalidArgument, "mechanical boundary values must be finite");
  if (!finite_therm(therm_left) || !finite_therm(therm_right))
    throw Error(ErrorCode::InvalidArgument,
                "thermal boundary values must be finite, end temperatures positive");
}

std::string mechanical_label(const BoundaryConditions& bcs) {
  return std::string(label(bcs.mech_left)) + "-" + label(bcs.mech_right);
}

std::string thermal_label(const BoundaryConditions& bcs) {
  return std::string(label(bcs.therm_left)) + "-" + label(bcs.therm_right);
}

DirichletLift dirichlet_lift(const BoundaryConditions& bcs, const Mesh1D& mesh) {
  DirichletLift lift;
  const std::size_t n = mesh.n_nodes();
  lift.u.assign(n, std::nullopt);
  lift.T.assign(n, std::nullopt);
  if (const auto* f = std::get_if<Fixed>(&bcs.mech_left)) lift.u.front() = f->displacement;
  if (const auto* f = std::get_if<Fixed>(&bcs.mech_right)) lift.u.back() = f->displacement;
  if (const auto* t = std::get_if<Isothermal>(&bcs.therm_left)) lift.T.front() = t->temperature;
  if (const auto* t = std::get_if<Isothermal>(&bcs.therm_right)) lift.T.back() = t->temperature;
  return lift;
}

DirichletIncrements dirichlet_increments(const DirichletLift& lift, const BaseState& state) {
  const auto n = static_cast<Eigen::Index>(lift.u.size());
  DirichletIncrements inc{Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n)};
  for (std::size_t i = 0; i < lift.u.size(); ++i) {
    if (lift.u[i]) inc.du(static_cast<Eigen::Index>(i)) = *lift.u[i] - state.u1[i];
    if (lift.T[i]) inc.dtheta(static_cast<Eigen::Index>(i)) = *lift.T[i] - state.T1[i];
  }
  return inc;
}

GlobalSystem assemble_global(const Mesh1D& mesh, const BaseState& state,
                             const MaterialBaseline& base, const MaterialLaws& laws,
                             const BoundaryConditions& bcs, const VolumeLoads& loads,
                             const AssemblyOptions& opts) {
  const QuadRule default_quad = opts.quad ? QuadRule{} : QuadRule::gauss(3);
  const QuadRule& quad = opts.quad ? *opts.quad : default_quad;
  const std::size_t nn = mesh.n_nodes();
  const std::size_t ne = mesh.n_elem();
  if (state.u1.size() != nn || state.T1.size() != nn || state.S1_qp.size() != ne)
    throw Error(ErrorCode::InvalidArgument, "base state does not match mesh dimensions");

  const auto N = static_cast<Eigen::Index>(nn);
  GlobalSystem g;
  for (auto* m : {&g.Muu, &g.Kuu, &g.Kut, &g.Dtu, &g.Dtt, &g.Ktt}) m->setZero(N, N);
  g.fu.setZero(N);
  g.ht.setZero(N);
  if (opts.conduction_tangent) {
    g.Ktt_k.setZero(N, N);
    g.Ktu_k.setZero(N, N);
  }

  std::vector<std::size_t> order(opts.element_order.begin(), opts.element_order.end());
  if (order.empty()) {
    order.resize(ne);
    std::iota(order.begin(), order.end(), std::size_t{0});
  }
  if (order.size() != ne) throw Error(ErrorCode::InvalidArgument, "element order has wrong length");

  for (const std::size_t e : order) {
    const ElementGeometry geom{mesh.nodes()[e], mesh.nodes()[e + 1], mesh.area()};
    const ElementState es{{state.u1[e], state.u1[e + 1]},
                          {state.T1[e], state.T1[e + 1]},
                          state.S1_qp[e]};
    const ElementMatrices em = element_matrices(geom, es, base, laws, quad, loads);
    const auto e0 = static_cast<Eigen::Index>(e);
    g.Muu.block<2, 2>(e0, e0) += em.Muu;
    g.Kuu.block<2, 2>(e0, e0) += em.Kuu;
    g.Kut.block<2, 2>(e0, e0) += em.Kut;
    g.Dtu.block<2, 2>(e0, e0) += em.Dtu;
    g.Dtt.block<2, 2>(e0, e0) += em.Dtt;
    g.Ktt.block<2, 2>(e0, e0) += em.Ktt;
    g.fu.segment<2>(e0) += em.fu;
    g.ht.segment<2>(e0) += em.ht;
    if (opts.conduction_tangent) {
      const ConductionTangent ct = conduction_tangent(geom, es, base, laws, quad);
      g.Ktt_k.block<2, 2>(e0, e0) += ct.Ktt_k;
      g.Ktu_k.block<2, 2>(e0, e0) += ct.Ktu_k;
    }
  }

  const double A = mesh.area();
  if (const auto* f = std::get_if<Free>(&bcs.mech_left)) g.fu(0) -= f->traction * A;
  if (const auto* f = std::get_if<Free>(&bcs.mech_right)) g.fu(N - 1) += f->traction * A;
  if (const auto* q = std::get_if<Flux>(&bcs.therm_left)) g.ht(0) += q->inflow * A;
  if (const auto* q = std::get_if<Flux>(&bcs.therm_right)) g.ht(N - 1) += q->inflow * A;
  return g;
}

AssembledSystem reduce(const GlobalSystem& g, const BoundaryConditions& bcs,
                       const DirichletIncrements* lift) {
  const auto nn = static_cast<std::size_t>(g.Muu.rows());
  AssembledSystem sys;
  sys.dofs.n_nodes = nn;
  std::vector<std::size_t> u_fixed, t_fixed;
  for (std::size_t i = 0; i < nn; ++i) {
    const bool left = i == 0, right = i + 1 == nn;
    const bool u_dir = (left && is_fixed(bcs.mech_left)) || (right && is_fixed(bcs.mech_right));
    const bool t_dir = (left && is_isothermal(bcs.therm_left)) ||
                       (right && is_isothermal(bcs.therm_right));
    (u_dir ? u_fixed : sys.dofs.u_nodes).push_back(i);
    (t_dir ? t_fixed : sys.dofs.t_nodes).push_back(i);
  }
  if (sys.dofs.u_nodes.empty())
    throw Error(ErrorCode::SingularSystem, "all displacement DOFs are constrained");

  const auto& uf = sys.dofs.u_nodes;
  const auto& tf = sys.dofs.t_nodes;
  sys.Muu = take(g.Muu, uf, uf);
  sys.Kuu = take(g.Kuu, uf, uf);
  sys.Kut = take(g.Kut, uf, tf);
  sys.Dtu = take(g.Dtu, tf, uf);
  sys.Dtt = take(g.Dtt, tf, tf);
  sys.Ktt = take(g.Ktt, tf, tf);
  sys.fu = take(g.fu, uf);
  sys.ht = take(g.ht, tf);

  if (lift) {
    const Eigen::VectorXd du_d = take(lift->du, u_fixed);
    const Eigen::VectorXd dt_d = take(lift->dtheta, t_fixed);
    if (!u_fixed.empty()) sys.fu -= take(g.Kuu, uf, u_fixed) * du_d;
    if (!t_fixed.empty()) {
      sys.fu -= take(g.Kut, uf, t_fixed) * dt_d;
      sys.ht -= take(g.Ktt, tf, t_fixed) * dt_d;
    }
  }
  return sys;
}

AssembledSystem assemble(const Mesh1D& mesh, const BaseState& state,
                         const MaterialBaseline& base, const MaterialLaws& laws,
                         const BoundaryConditions& bcs, const VolumeLoads& loads,
                         const DirichletIncrements* lift, const AssemblyOptions& opts) {
  return reduce(assemble_global(mesh, state, base, laws, bcs, loads, opts), bcs, lift);
}

}  // namespace tedfem
