#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"
#include "tedfem/analysis.hpp"
#include "tedfem/error.hpp"

using namespace tedfem;
using cd = std::complex<double>;

namespace {

AssembledSystem scalar_system(double m, double k, double kut, double dtu, double c, double kt) {
  AssembledSystem s;
  s.Muu = Eigen::MatrixXd::Constant(1, 1, m);
  s.Kuu = Eigen::MatrixXd::Constant(1, 1, k);
  s.Kut = Eigen::MatrixXd::Constant(1, 1, kut);
  s.Dtu = Eigen::MatrixXd::Constant(1, 1, dtu);
  s.Dtt = Eigen::MatrixXd::Constant(1, 1, c);
  s.Ktt = Eigen::MatrixXd::Constant(1, 1, kt);
  s.fu = Eigen::VectorXd::Zero(1);
  s.ht = Eigen::VectorXd::Zero(1);
  return s;
}

std::vector<cd> sorted(std::vector<cd> v) {
  std::sort(v.begin(), v.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

bool has_partner(const std::vector<cd>& v, cd l, double tol) {
  return std::any_of(v.begin(), v.end(), [&](cd o) { return std::abs(o - std::conj(l)) <= tol * std::abs(l); });
}

}  // namespace

TEST_SUITE("eigen") {

TEST_CASE("decoupled scalar system") {
  auto op = build_state_space(scalar_system(2.0, 18.0, 0.0, 0.0, 4.0, 10.0));
  auto v = sorted(spectrum(op, false).values);
  REQUIRE(v.size() == 3);
  CHECK(v[0].real() == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(v[0].imag() == 0.0);
  CHECK(std::abs(v[1] - cd(0.0, -3.0)) <= 1e-13);
  CHECK(std::abs(v[2] - cd(0.0, 3.0)) <= 1e-13);
}

TEST_CASE("coupled scalar system matches its characteristic polynomial") {
  const double m = 1.5, k = 40.0, kut = 0.7, dtu = -2.0, c = 3.0, kt = 5.0;
  auto v = spectrum(build_state_space(scalar_system(m, k, kut, dtu, c, kt)), false).values;
  // det(lambda I - A) = lambda^3 + a lambda^2 + b lambda + d
  const double a = kt / c, b = k / m - kut * dtu / (m * c), d = k * kt / (m * c);
  for (cd l : v) {
    cd p = l * l * l + a * l * l + b * l + d;
    CHECK(std::abs(p) <= 1e-12 * (std::abs(l * l * l) + a * std::norm(l) + b * std::abs(l) + d));
  }
  cd s = v[0] + v[1] + v[2];
  cd pr = v[0] * v[1] * v[2];
  CHECK(std::abs(s + a) <= 1e-13 * a);
  CHECK(std::abs(pr + d) <= 1e-13 * d);
}

TEST_CASE("free bar has rigid modes") {
  ProblemSpec spec;
  spec.n_elem = 6;
  spec.bcs.mech_left = Free{};
  spec.bcs.mech_right = Free{};
  spec.bcs.therm_left = Adiabatic{};
  spec.bcs.therm_right = Adiabatic{};
  auto mesh = spec.mesh();
  auto scales = Scales::characteristic(spec.material, spec.length, spec.area);
  std::vector<double> x(mesh.nodes().begin(), mesh.nodes().end());
  for (auto& xi : x) xi /= scales.length;
  Mesh1D m(x, 1.0);
  auto st = BaseState::reference(7, 6, 3, 1.0);
  auto sys = assemble(m, st, scale(spec.material, scales), {}, scale(spec.bcs, scales), {});
  auto v = spectrum(build_state_space(sys), false).values;
  double radius = 0.0;
  for (cd l : v) radius = std::max(radius, std::abs(l));
  const auto zeros = std::count_if(v.begin(), v.end(), [&](cd l) { return std::abs(l) <= 1e-6 * radius; });
  CHECK(zeros >= 2);
}

TEST_CASE("generic dense spectra") {
  Eigen::MatrixXd d(2, 2);
  d << -1, 0, 0, -2;
  auto a = sorted(spectrum(d, false).values);
  CHECK(std::abs(a[0] - cd(-2, 0)) <= 1e-15);
  CHECK(std::abs(a[1] - cd(-1, 0)) <= 1e-15);
  Eigen::MatrixXd comp(2, 2);
  comp << 0, -1, 1, 0;
  auto b = sorted(spectrum(comp, false).values);
  CHECK(std::abs(b[0] - cd(0, -1)) <= 1e-15);
  CHECK(std::abs(b[1] - cd(0, 1)) <= 1e-15);

  // Q Lambda Q^-1 with a real block form of {-1 +- 3i, -0.5 +- 7i, 2, -4}
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(6, 6);
  L.block<2, 2>(0, 0) << -1, 3, -3, -1;
  L.block<2, 2>(2, 2) << -0.5, 7, -7, -0.5;
  L(4, 4) = 2.0;
  L(5, 5) = -4.0;
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd Q(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) Q(i, j) = u(rng) + (i == j ? 3.0 : 0.0);
  Eigen::MatrixXd A = Q * L * Q.inverse();
  auto got = sorted(spectrum(A, true).values);
  std::vector<cd> want = sorted({{-1, 3}, {-1, -3}, {-0.5, 7}, {-0.5, -7}, {2, 0}, {-4, 0}});
  for (int i = 0; i < 6; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-8 * std::abs(want[i]));

  // eigenvectors satisfy A v = lambda v
  auto sp = spectrum(A, true);
  Eigen::MatrixXcd Ac = A.cast<cd>();
  for (int i = 0; i < 6; ++i) {
    Eigen::VectorXcd vv = sp.vectors.col(i);
    CHECK((Ac * vv - sp.values[i] * vv).norm() <= 1e-10 * A.norm() * vv.norm());
  }
}

TEST_CASE("badly scaled matrices are balanced") {
  Eigen::MatrixXd A(3, 3);
  A << 1, 1e8, 0, 1e-8, 2, 1e10, 0, 1e-10, 3;
  auto v = spectrum(A, false).values;
  Eigen::EigenSolver<Eigen::Matrix3d> ref(Eigen::Matrix3d{
      {1, 1, 0}, {1, 2, 1}, {0, 1, 3}});  // diagonally similar
  auto r = ref.eigenvalues();
  auto s1 = sorted(v);
  auto s2 = sorted({r(0), r(1), r(2)});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s1[i] - s2[i]) <= 1e-12 * 4.0);
}

TEST_CASE("quality factor from a known eigenvalue") {
  // u'' + 10 u' + (25 + 1e8) u = 0 has lambda = -5 +- 10000 i
  StateSpaceOperator op;
  op.A.resize(2, 2);
  op.A << 0, 1, -(25.0 + 1e8), -10.0;
  op.m = 1;
  op.n = 0;
  auto res = extract_q(spectrum(op, true), op, 9000.0, {1.0, 10000.0, 1.0});
  CHECK(res.fundamental.real() == doctest::Approx(-5.0).epsilon(1e-10));
  CHECK(res.omega == doctest::Approx(10000.0).epsilon(1e-12));
  CHECK(res.q_inverse == doctest::Approx(1e-3).epsilon(1e-10));
  CHECK(res.shift == doctest::Approx(1000.0 / 9000.0).epsilon(1e-12));
  auto none = extract_q(spectrum(op, true), op, 0.0, {1.0, 10000.0, 1.0});
  CHECK(none.shift == 0.0);

  StateSpaceOperator over;
  over.A.resize(2, 2);
  over.A << 0, 1, -1.0, -10.0;  // overdamped
  over.m = 1;
  try {
    extract_q(spectrum(over, true), over, 0.0);
    FAIL("expected NoMechanicalMode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoMechanicalMode);
  }
  CHECK_THROWS_AS(extract_q(spectrum(op, false), op, 0.0), Error);
}

TEST_CASE("singular mass is reported") {
  auto s = scalar_system(0.0, 1.0, 0.0, 0.0, 1.0, 1.0);
  try {
    build_state_space(s);
    FAIL("expected SingularMass");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMass);
  }
}

TEST_CASE("uncoupled fixed-free bar") {
  ProblemSpec spec;
  spec.material.alpha0 = 0.0;
  spec.bcs.mech_right = Free{};
  Analysis a(spec);
  auto res = a.modal();
  const double w = oracle::fixed_free_omega(spec.material.Y0, spec.material.rho0, spec.length);
  CHECK(res.omega == doctest::Approx(w).epsilon(1e-3));
  CHECK(res.q_inverse < 1e-12);
  for (cd l : res.eigenvalues)
    if (std::abs(l.imag()) > 0.0) CHECK(std::abs(l.real()) < 1e-12 * std::abs(l.imag()) + 1e-9 * res.omega);
  CHECK(res.mechanical_fraction > 0.99);
}

TEST_CASE("coupled spectra are conjugate-symmetric and dissipative") {
  std::vector<ProblemSpec> specs(4);
  specs[0].n_elem = 20;
  specs[1].n_elem = 20;
  specs[1].program.prestrain = 0.25;
  specs[1].program.power_per_length = 250.0;
  specs[2].n_elem = 20;
  specs[2].bcs.therm_left = Adiabatic{};
  specs[2].bcs.therm_right = Adiabatic{};
  specs[2].length = 35e-9;
  specs[3].n_elem = 20;
  specs[3].program.power_per_length = 100.0;
  specs[3].laws = {1e-3, 0.02, 0.5};
  specs[3].program.prestrain = 0.1;
  for (auto& s : specs) {
    Analysis a(s);
    auto res = a.modal();
    for (cd l : res.eigenvalues) {
      if (std::abs(l.imag()) > 1e-9 * res.omega) CHECK(has_partner(res.eigenvalues, l, 1e-10));
    }
    CHECK(res.fundamental.real() < 0.0);
    CHECK(res.q_inverse > 0.0);
    CHECK(res.mechanical_fraction >= 0.5);
    // every eigenvalue decays or is neutral
    double radius = 0.0;
    for (cd l : res.eigenvalues) radius = std::max(radius, std::abs(l));
    for (cd l : res.eigenvalues) CHECK(l.real() <= 1e-9 * radius);
  }
}

TEST_CASE("solver units do not change the modal answer") {
  ProblemSpec spec;
  spec.n_elem = 8;
  spec.program.prestrain = 0.1;
  spec.program.power_per_length = 100.0;
  Analysis a(spec);
  spec.nondimensionalize = false;
  Analysis b(spec);
  auto ra = a.modal(), rb = b.modal();
  CHECK(ra.omega == doctest::Approx(rb.omega).epsilon(1e-8));
  CHECK(ra.q_inverse == doctest::Approx(rb.q_inverse).epsilon(1e-8));
}

TEST_CASE("frequency shift against the uncoupled reference") {
  ProblemSpec spec;
  spec.n_elem = 20;
  auto ref_spec = uncoupled_reference(spec, 100e-9);
  CHECK(ref_spec.material.alpha0 == 0.0);
  Analysis r(ref_spec);
  const double w0 = r.modal().omega;
  // consistent mass overestimates by about (pi h / L)^2 / 24 = 1e-3 at 20 elements
  CHECK(w0 == doctest::Approx(oracle::fixed_fixed_omega(165e9, 2300.0, 100e-9)).epsilon(2e-3));
  CHECK(w0 > oracle::fixed_fixed_omega(165e9, 2300.0, 100e-9));
  spec.program.prestrain = 0.25;
  Analysis a(spec);
  auto res = a.modal(w0);
  CHECK(res.shift > 0.0);
  CHECK(res.shift == doctest::Approx((res.omega - w0) / w0).epsilon(1e-14));
}

}
