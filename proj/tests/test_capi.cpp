#include <cmath>
#include <cstring>
#include <numbers>
#include <thread>
#include <vector>

#include "doctest.h"
#include "tedfem/tedfem.h"

namespace {

struct Handle {
  tedfem_problem* p = nullptr;
  ~Handle() { tedfem_problem_destroy(p); }
};

tedfem_problem_desc small_desc() {
  tedfem_problem_desc d;
  tedfem_problem_desc_init(&d);
  d.n_elem = 12;
  return d;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("defaults") {
  tedfem_problem_desc d;
  std::memset(&d, 0xff, sizeof d);
  tedfem_problem_desc_init(&d);
  CHECK(d.Y0 == 165e9);
  CHECK(d.rho0 == 2300.0);
  CHECK(d.alpha0 == 2.6e-6);
  CHECK(d.k0 == 159.0);
  CHECK(d.cv0 == 713.0);
  CHECK(d.T0 == 300.0);
  CHECK(d.length == 100e-9);
  CHECK(d.area == doctest::Approx(1e-16));
  CHECK(d.n_elem == 100);
  CHECK(d.nodes == nullptr);
  CHECK(d.left.mech == TEDFEM_MECH_FIXED);
  CHECK(d.right.therm == TEDFEM_THERM_ISOTHERMAL);
  CHECK(d.right.therm_value == 300.0);
  CHECK(d.upsilon == 0.0);
  CHECK(d.prestrain == 0.0);
  CHECK(d.nondimensionalize == 1);
  CHECK(tedfem_problem_validate(&d) == TEDFEM_OK);
  CHECK(std::strcmp(tedfem_version(), "1.0.0") == 0);
}

TEST_CASE("validation errors carry codes and messages") {
  auto d = small_desc();
  d.n_elem = 0;
  CHECK(tedfem_problem_validate(&d) == TEDFEM_ERR_INVALID_MESH);
  CHECK(std::strlen(tedfem_last_error()) > 0);
  d = small_desc();
  d.left.therm = 7;
  CHECK(tedfem_problem_validate(&d) == TEDFEM_ERR_INVALID_ARGUMENT);
  CHECK(tedfem_problem_validate(nullptr) == TEDFEM_ERR_INVALID_ARGUMENT);
  tedfem_problem* p = reinterpret_cast<tedfem_problem*>(0x1);
  d = small_desc();
  d.k0 = -1.0;
  CHECK(tedfem_problem_create(&d, &p) == TEDFEM_ERR_INVALID_ARGUMENT);
  CHECK(p == nullptr);
  CHECK(std::strcmp(tedfem_status_string(TEDFEM_ERR_SINGULAR_TANGENT), "singular tangent") == 0);
}

TEST_CASE("static solve through the handle") {
  auto d = small_desc();
  d.prestrain = 0.25;
  Handle h;
  REQUIRE(tedfem_problem_create(&d, &h.p) == TEDFEM_OK);
  const size_t n = tedfem_node_count(h.p);
  REQUIRE(n == 13);
  std::vector<double> u(n), T(n), R(n), x(n), Q(n);
  CHECK(tedfem_get_displacement(h.p, u.data(), n) == TEDFEM_ERR_NOT_SOLVED);
  REQUIRE(tedfem_solve_static(h.p) == TEDFEM_OK);
  CHECK(tedfem_get_nodes(h.p, x.data(), n) == TEDFEM_OK);
  CHECK(tedfem_get_displacement(h.p, u.data(), n) == TEDFEM_OK);
  CHECK(tedfem_get_temperature(h.p, T.data(), n) == TEDFEM_OK);
  CHECK(tedfem_get_reactions(h.p, R.data(), n) == TEDFEM_OK);
  CHECK(tedfem_get_boundary_heat(h.p, Q.data(), n) == TEDFEM_OK);
  CHECK(tedfem_get_displacement(h.p, u.data(), n - 1) == TEDFEM_ERR_BUFFER_SIZE);
  CHECK(u.back() == doctest::Approx(0.25 * 100e-9).epsilon(1e-14));
  CHECK(x.back() == 100e-9);
  const double s = 0.25;
  CHECK(R.back() / d.area == doctest::Approx(165e9 * (s + s * s / 2) * (1 + s)).epsilon(1e-10));
  CHECK(tedfem_stretch_force_per_area(165e9, s) == doctest::Approx(165e9 * (s + s * s / 2) * (1 + s)).epsilon(1e-15));
  size_t count = 0;
  CHECK(tedfem_get_residual_history(h.p, nullptr, 0, &count) == TEDFEM_OK);
  CHECK(count >= static_cast<size_t>(d.n_steps));
  std::vector<double> hist(count);
  CHECK(tedfem_get_residual_history(h.p, hist.data(), count, &count) == TEDFEM_OK);
  CHECK(hist.back() <= d.tol);
}

TEST_CASE("modal analysis through the handle") {
  auto d = small_desc();
  double w0 = 0.0;
  REQUIRE(tedfem_reference_frequency(&d, 100e-9, &w0) == TEDFEM_OK);
  CHECK(w0 == doctest::Approx(std::numbers::pi / 100e-9 * std::sqrt(165e9 / 2300.0)).epsilon(5e-3));
  Handle h;
  REQUIRE(tedfem_problem_create(&d, &h.p) == TEDFEM_OK);
  size_t count = 0;
  CHECK(tedfem_get_eigenvalues(h.p, nullptr, nullptr, 0, &count) == TEDFEM_ERR_NOT_SOLVED);
  tedfem_modal_result r;
  REQUIRE(tedfem_modal(h.p, w0, &r) == TEDFEM_OK);
  CHECK(r.q_inverse > 0.0);
  CHECK(r.q_inverse == doctest::Approx(2 * std::abs(r.lambda_re) / r.lambda_im).epsilon(1e-14));
  CHECK(r.omega == r.lambda_im);
  CHECK(r.omega0_ref == w0);
  CHECK(std::abs(r.shift) < 1e-3);
  CHECK(r.n_eigenvalues == 11 * 2 + 11);
  std::vector<double> re(r.n_eigenvalues), im(r.n_eigenvalues);
  CHECK(tedfem_get_eigenvalues(h.p, re.data(), im.data(), re.size(), &count) == TEDFEM_OK);
  CHECK(count == r.n_eigenvalues);
  bool found = false;
  for (size_t i = 0; i < count; ++i) found = found || (re[i] == r.lambda_re && im[i] == r.lambda_im);
  CHECK(found);
}

TEST_CASE("solver failures map to status codes") {
  auto d = small_desc();
  d.left.therm = TEDFEM_THERM_ADIABATIC;
  d.right.therm = TEDFEM_THERM_ADIABATIC;
  d.heat_source = 1e17;
  Handle h;
  REQUIRE(tedfem_problem_create(&d, &h.p) == TEDFEM_OK);
  CHECK(tedfem_solve_static(h.p) == TEDFEM_ERR_SINGULAR_TANGENT);
  tedfem_modal_result r;
  CHECK(tedfem_modal(h.p, 0.0, &r) == TEDFEM_ERR_SINGULAR_TANGENT);
  CHECK(tedfem_solve_static(nullptr) == TEDFEM_ERR_INVALID_ARGUMENT);
  CHECK(tedfem_node_count(nullptr) == 0);
}

TEST_CASE("conduction reference") {
  std::vector<double> xs{0.0, 25e-9, 50e-9, 100e-9}, T(4);
  REQUIRE(tedfem_conduction_shooting(159.0, 0.0, 300.0, 1e18, 100e-9, 300.0, 300.0, xs.data(), 4, T.data()) == TEDFEM_OK);
  CHECK(T[2] == doctest::Approx(300.0 + 1e18 * 50e-9 * 50e-9 / (2 * 159.0)).epsilon(1e-12));
  CHECK(T[3] == doctest::Approx(300.0).epsilon(1e-12));
}

TEST_CASE("independent handles run concurrently") {
  std::vector<double> q(4, 0.0), serial(4, 0.0);
  auto run = [](double L, double* out) {
    auto d = small_desc();
    d.length = L;
    tedfem_problem* p = nullptr;
    if (tedfem_problem_create(&d, &p) != TEDFEM_OK) return;
    tedfem_modal_result r;
    if (tedfem_modal(p, 0.0, &r) == TEDFEM_OK) *out = r.q_inverse;
    tedfem_problem_destroy(p);
  };
  const double Ls[] = {40e-9, 80e-9, 160e-9, 320e-9};
  for (int i = 0; i < 4; ++i) run(Ls[i], &serial[i]);
  std::vector<std::thread> pool;
  for (int i = 0; i < 4; ++i) pool.emplace_back(run, Ls[i], &q[i]);
  for (auto& t : pool) t.join();
  for (int i = 0; i < 4; ++i) {
    CHECK(serial[i] > 0.0);
    CHECK(q[i] == serial[i]);
  }
}

}
