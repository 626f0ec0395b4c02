/* C interface to the coupled thermoelastic bar solver.
 *
 * Every function returns a tedfem_status; on failure a description of the
 * last error on the calling thread is available from tedfem_last_error().
 * Problems are opaque handles owned by the caller and released with
 * tedfem_problem_destroy(). A handle must not be used from two threads at
 * once; distinct handles are independent. All quantities are SI.
 */
#ifndef TEDFEM_TEDFEM_H
#define TEDFEM_TEDFEM_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(TEDFEM_BUILDING_LIBRARY)
#define TEDFEM_API __declspec(dllexport)
#else
#define TEDFEM_API __declspec(dllimport)
#endif
#else
#define TEDFEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tedfem_status {
  TEDFEM_OK = 0,
  TEDFEM_ERR_INVALID_ARGUMENT = 1,
  TEDFEM_ERR_INVALID_MESH = 2,
  TEDFEM_ERR_NONPOSITIVE_CONDUCTIVITY = 3,
  TEDFEM_ERR_SINGULAR_SYSTEM = 4,
  TEDFEM_ERR_NO_CONVERGENCE = 5,
  TEDFEM_ERR_SINGULAR_TANGENT = 6,
  TEDFEM_ERR_SINGULAR_MASS = 7,
  TEDFEM_ERR_EIGEN_NO_CONVERGENCE = 8,
  TEDFEM_ERR_NO_MECHANICAL_MODE = 9,
  TEDFEM_ERR_NOT_SOLVED = 10,
  TEDFEM_ERR_BUFFER_SIZE = 11,
  TEDFEM_ERR_INTERNAL = 12
} tedfem_status;

typedef enum tedfem_mech_kind {
  TEDFEM_MECH_FIXED = 0, /* mech_value: prescribed end displacement [m] */
  TEDFEM_MECH_FREE = 1   /* mech_value: end traction, positive in tension [Pa] */
} tedfem_mech_kind;

typedef enum tedfem_therm_kind {
  TEDFEM_THERM_ISOTHERMAL = 0, /* therm_value: end temperature [K] */
  TEDFEM_THERM_ADIABATIC = 1,  /* therm_value ignored */
  TEDFEM_THERM_FLUX = 2        /* therm_value: heat flux into the bar [W/m^2] */
} tedfem_therm_kind;

typedef struct tedfem_end {
  int mech; /* tedfem_mech_kind */
  double mech_value;
  int therm; /* tedfem_therm_kind */
  double therm_value;
} tedfem_end;

typedef struct tedfem_problem_desc {
  /* material baseline */
  double Y0, nu, rho0, alpha0, k0, cv0, T0;
  /* property laws: Y = Y0 e^{upsilon dT}, k = k0 e^{beta dT} (1 - chi du/dx) */
  double upsilon, beta, chi;
  /* geometry and mesh; nodes (if non-null) overrides length and n_elem */
  double length, area;
  int n_elem;
  const double* nodes;
  size_t n_nodes;
  tedfem_end left, right;
  /* load program, ramped over n_steps */
  double prestrain;        /* dL/L at the right end, re-clamped for modal analysis */
  double heat_source;      /* [W/m^3] */
  double power_per_length; /* [W/m], divided by area */
  double body_force;       /* [N/kg] */
  int n_steps;
  /* static solver */
  double tol;
  int max_iter;
  int quad_points;
  int nondimensionalize; /* nonzero: solve in characteristic units */
} tedfem_problem_desc;

typedef struct tedfem_modal_result {
  double omega;        /* fundamental |Im lambda| [rad/s] */
  double q_inverse;    /* 2 |Re lambda| / |Im lambda| */
  double shift;        /* (omega - omega0_ref) / omega0_ref, 0 without reference */
  double omega0_ref;   /* [rad/s] */
  double lambda_re;    /* fundamental eigenvalue [1/s] */
  double lambda_im;
  double mechanical_fraction;
  size_t n_eigenvalues;
} tedfem_modal_result;

typedef struct tedfem_problem tedfem_problem;

/* Defaults: silicon at 300 K, 100 nm x 10 nm x 10 nm bar, 100 elements,
 * fixed-fixed, isothermal at T0, no loads, 10 steps, tol 1e-10, 25 iterations,
 * 3-point quadrature, nondimensionalized. */
TEDFEM_API void tedfem_problem_desc_init(tedfem_problem_desc* desc);
TEDFEM_API tedfem_status tedfem_problem_validate(const tedfem_problem_desc* desc);

TEDFEM_API tedfem_status tedfem_problem_create(const tedfem_problem_desc* desc,
                                               tedfem_problem** out);
TEDFEM_API void tedfem_problem_destroy(tedfem_problem* problem);

TEDFEM_API tedfem_status tedfem_solve_static(tedfem_problem* problem);
TEDFEM_API size_t tedfem_node_count(const tedfem_problem* problem);

/* Nodal arrays of length tedfem_node_count(). All but nodes require a solve. */
TEDFEM_API tedfem_status tedfem_get_nodes(const tedfem_problem* problem, double* out, size_t n);
TEDFEM_API tedfem_status tedfem_get_displacement(const tedfem_problem* problem, double* out, size_t n);
TEDFEM_API tedfem_status tedfem_get_temperature(const tedfem_problem* problem, double* out, size_t n);
/* Support force on the bar at clamped nodes [N]; zero elsewhere. */
TEDFEM_API tedfem_status tedfem_get_reactions(const tedfem_problem* problem, double* out, size_t n);
/* Heat entering through isothermal nodes [W]; zero elsewhere. */
TEDFEM_API tedfem_status tedfem_get_boundary_heat(const tedfem_problem* problem, double* out, size_t n);
/* Writes min(capacity, available) entries and the available count. */
TEDFEM_API tedfem_status tedfem_get_residual_history(const tedfem_problem* problem, double* out,
                                                     size_t capacity, size_t* count);

/* Solves the static state if needed, then the modal problem. omega0_ref <= 0
 * disables the frequency shift. */
TEDFEM_API tedfem_status tedfem_modal(tedfem_problem* problem, double omega0_ref,
                                      tedfem_modal_result* out);
TEDFEM_API tedfem_status tedfem_get_eigenvalues(const tedfem_problem* problem, double* re,
                                                double* im, size_t capacity, size_t* count);

/* Uncoupled, unloaded fundamental frequency of the same mesh resolution and
 * boundary types at another length. */
TEDFEM_API tedfem_status tedfem_reference_frequency(const tedfem_problem_desc* desc,
                                                    double length, double* omega);

TEDFEM_API double tedfem_stretch_force_per_area(double Y0, double stretch);
TEDFEM_API tedfem_status tedfem_conduction_shooting(double k0, double beta, double T0, double r,
                                                    double length, double T_left, double T_right,
                                                    const double* xs, size_t n, double* out);

TEDFEM_API const char* tedfem_status_string(tedfem_status status);
TEDFEM_API const char* tedfem_last_error(void);
TEDFEM_API const char* tedfem_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TEDFEM_TEDFEM_H */
