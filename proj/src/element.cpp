#include "tedfem/element.hpp"

#include "tedfem/error.hpp"

namespace tedfem {

namespace {

struct PointValues {
  ShapeValues shape;
  double jxw = 0.0;    // area * h/2 * weight
  double du1 = 0.0;    // du1/dx
  double T1 = 0.0;
  double dT1 = 0.0;    // dT1/dx
};

PointValues point_values(const ElementGeometry& geom, const ElementState& state,
                         const QuadRule& quad, std::size_t g) {
  const double h = geom.length();
  PointValues p;
  p.shape = shape_values(quad.points[g], h);
  p.jxw = geom.area * 0.5 * h * quad.weights[g];
  const auto& N = p.shape.N;
  const auto& dN = p.shape.dN_dx;
  p.du1 = dN[0] * state.u1[0] + dN[1] * state.u1[1];
  p.T1 = N[0] * state.T1[0] + N[1] * state.T1[1];
  p.dT1 = dN[0] * state.T1[0] + dN[1] * state.T1[1];
  return p;
}

void check_state(const ElementGeometry& geom, const ElementState& state, const QuadRule& quad) {
  if (!(geom.length() > 0.0) || !(geom.area > 0.0))
    throw Error(ErrorCode::InvalidMesh, "element has nonpositive length or area");
  if (state.S1_qp.size() != quad.size())
    throw Error(ErrorCode::InvalidArgument, "element stress count does not match quadrature");
  if (!(state.T1[0] > 0.0) || !(state.T1[1] > 0.0))
    throw Error(ErrorCode::InvalidArgument, "element temperatures must be positive");
}

}  // namespace

ElementMatrices element_matrices(const ElementGeometry& geom, const ElementState& state,
                                 const MaterialBaseline& base, const MaterialLaws& laws,
                                 const QuadRule& quad, const VolumeLoads& loads) {
  check_state(geom, state, quad);
  ElementMatrices em;
  em.Muu.setZero();
  em.Kuu.setZero();
  em.Kut.setZero();
  em.Dtt.setZero();
  em.Dtu.setZero();
  em.Ktt.setZero();
  em.fu.setZero();
  em.ht.setZero();

  const double rho = base.rho0;
  for (std::size_t g = 0; g < quad.size(); ++g) {
    const PointValues p = point_values(geom, state, quad, g);
    const LocalState local{p.T1, p.du1};
    const double Y = young_modulus(base, laws, local);
    const double M = thermal_stress_modulus(base, laws, local);
    const double k = conductivity(base, laws, local);
    const double S1 = state.S1_qp[g];
    const double F = 1.0 + p.du1;
    const auto& N = p.shape.N;
    const auto& dN = p.shape.dN_dx;

    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        em.Muu(i, j) += rho * N[i] * N[j] * p.jxw;
        em.Kuu(i, j) += (S1 + Y * F * F) * dN[i] * dN[j] * p.jxw;
        em.Kut(i, j) += M * F * dN[i] * N[j] * p.jxw;
        em.Dtt(i, j) += rho * base.cv0 * N[i] * N[j] * p.jxw;
        // -T1 M with M = -alpha Y: heating under compression.
        em.Dtu(i, j) += -p.T1 * M * F * N[i] * dN[j] * p.jxw;
        em.Ktt(i, j) += k * dN[i] * dN[j] * p.jxw;
      }
      em.fu(i) += (rho * loads.body_force * N[i] - S1 * F * dN[i]) * p.jxw;
      // Base flux q1 = -k dT1/dx; the rho T1 deta1/dt term is zero for the
      // steady base states built here.
      em.ht(i) += (loads.heat_source * N[i] - k * p.dT1 * dN[i]) * p.jxw;
    }
  }
  return em;
}

IncrementalStrain incremental_strain_measures(std::array<double, 2> u_inc,
                                              const ElementState& state, double h, double xi) {
  const ShapeValues s = shape_values(xi, h);
  const double du1 = s.dN_dx[0] * state.u1[0] + s.dN_dx[1] * state.u1[1];
  const double du = s.dN_dx[0] * u_inc[0] + s.dN_dx[1] * u_inc[1];
  return IncrementalStrain{du + du1 * du, 0.5 * du * du};
}

double stress_update(double S1, IncrementalStrain eps, double theta,
                     const MaterialBaseline& base, const MaterialLaws& laws, LocalState at) {
  const double Y = young_modulus(base, laws, at);
  const double M = thermal_stress_modulus(base, laws, at);
  return S1 + Y * (eps.e + eps.gamma) + M * theta;
}

ConductionTangent conduction_tangent(const ElementGeometry& geom, const ElementState& state,
                                     const MaterialBaseline& base, const MaterialLaws& laws,
                                     const QuadRule& quad) {
  check_state(geom, state, quad);
  ConductionTangent ct;
  ct.Ktt_k.setZero();
  ct.Ktu_k.setZero();
  if (laws.beta == 0.0 && laws.chi == 0.0) return ct;
  for (std::size_t g = 0; g < quad.size(); ++g) {
    const PointValues p = point_values(geom, state, quad, g);
    const LocalState local{p.T1, p.du1};
    const double kT = conductivity_dT(base, laws, local);
    const double ke = conductivity_dstrain(base, laws, local);
    const auto& N = p.shape.N;
    const auto& dN = p.shape.dN_dx;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        ct.Ktt_k(i, j) += kT * p.dT1 * dN[i] * N[j] * p.jxw;
        ct.Ktu_k(i, j) += ke * p.dT1 * dN[i] * dN[j] * p.jxw;
      }
    }
  }
  return ct;
}

}  // namespace tedfem
