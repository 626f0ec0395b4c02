#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tedfem/assembly.hpp"

namespace tedfem {

/// First-order operator of the homogeneous coupled system acting on
/// z = (u, du/dt, theta):
///   [ 0          I   0          ]
///   [ -M^-1 Kuu  0   -M^-1 Kut  ]
///   [ 0   -Dtt^-1 Dtu  -Dtt^-1 Ktt ]
struct StateSpaceOperator {
  Eigen::MatrixXd A;
  Eigen::Index m = 0;  // retained displacement DOFs
  Eigen::Index n = 0;  // retained temperature DOFs
};

/// Throws SingularMass if Muu or Dtt cannot be inverted.
StateSpaceOperator build_state_space(const AssembledSystem& sys);

struct Spectrum {
  std::vector<std::complex<double>> values;
  Eigen::MatrixXcd vectors;  // columns match values; empty when not requested
};

/// Full spectrum of a dense real matrix: diagonal balancing followed by
/// Hessenberg reduction and shifted QR. Conjugate partners are made exact.
/// Throws NoConvergenceQR if the QR sweep stalls.
Spectrum spectrum(const Eigen::MatrixXd& A, bool vectors = true);
inline Spectrum spectrum(const StateSpaceOperator& op, bool vectors = true) {
  return spectrum(op.A, vectors);
}

/// Reference magnitudes used to compare the partitions of an eigenvector.
struct ModeScales {
  double displacement = 1.0;
  double velocity = 1.0;
  double temperature = 1.0;
};

struct EigenResult {
  std::vector<std::complex<double>> eigenvalues;
  std::complex<double> fundamental{0.0, 0.0};
  double omega = 0.0;       // |Im| of the fundamental
  double q_inverse = 0.0;   // 2 |Re| / |Im|
  double omega0_ref = 0.0;  // reference for the shift, <= 0 when absent
  double shift = 0.0;       // (omega - omega0_ref) / omega0_ref, 0 when absent
  double mechanical_fraction = 0.0;  // displacement share of the fundamental eigenvector
};

/// Share of the scaled eigenvector norm carried by (u, du/dt).
double mechanical_fraction(const Eigen::VectorXcd& v, Eigen::Index m, const ModeScales& scales);

/// Picks the oscillatory mechanical mode with the smallest positive
/// frequency. Requires eigenvectors in `spec`. Throws NoMechanicalMode.
EigenResult extract_q(const Spectrum& spec, const StateSpaceOperator& op, double omega0_ref,
                      const ModeScales& scales = {});

}  // namespace tedfem
