#include "tedfem/eigen_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "tedfem/error.hpp"

namespace tedfem {

using Eigen::Index;
using Eigen::MatrixXd;

namespace {

Eigen::PartialPivLU<MatrixXd> factor_or_throw(const MatrixXd& M, const char* name) {
  Eigen::PartialPivLU<MatrixXd> lu(M);
  if (M.size() > 0 && !(lu.rcond() > 1e-14))
    throw Error(ErrorCode::SingularMass, std::string(name) + " is singular");
  return lu;
}

/// Power-of-two diagonal scaling D so that D^-1 A D has comparable row and
/// column norms (EISPACK balanc without the permutation stage).
Eigen::VectorXd balance(MatrixXd& A) {
  const Index n = A.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  constexpr double radix = 2.0;
  bool done = false;
  for (int sweep = 0; !done && sweep < 200; ++sweep) {
    done = true;
    for (Index i = 0; i < n; ++i) {
      const double c = A.col(i).cwiseAbs().sum() - std::abs(A(i, i));
      const double r = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix, f = 1.0, cc = c;
      const double s = c + r;
      while (cc < g) {
        f *= radix;
        cc *= radix * radix;
      }
      g = r * radix;
      while (cc > g) {
        f /= radix;
        cc /= radix * radix;
      }
      // cc now holds c f^2, so (cc + r) / f is the balanced norm sum
      if ((cc + r) / f < 0.95 * s) {
        done = false;
        d(i) *= f;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
  return d;
}

}  // namespace

StateSpaceOperator build_state_space(const AssembledSystem& sys) {
  const Index m = sys.Muu.rows();
  const Index n = sys.Dtt.rows();
  StateSpaceOperator op;
  op.m = m;
  op.n = n;
  op.A = MatrixXd::Zero(2 * m + n, 2 * m + n);
  const auto mass = factor_or_throw(sys.Muu, "displacement mass block");
  op.A.block(0, m, m, m).setIdentity();
  op.A.block(m, 0, m, m) = -mass.solve(sys.Kuu);
  if (n > 0) {
    const auto capacity = factor_or_throw(sys.Dtt, "heat capacity block");
    op.A.block(m, 2 * m, m, n) = -mass.solve(sys.Kut);
    op.A.block(2 * m, m, n, m) = -capacity.solve(sys.Dtu);
    op.A.block(2 * m, 2 * m, n, n) = -capacity.solve(sys.Ktt);
  }
  if (!op.A.allFinite()) throw Error(ErrorCode::SingularMass, "state-space operator is not finite");
  return op;
}

Spectrum spectrum(const MatrixXd& A_in, bool vectors) {
  if (A_in.rows() != A_in.cols()) throw Error(ErrorCode::InvalidArgument, "spectrum of non-square matrix");
  if (!A_in.allFinite()) throw Error(ErrorCode::InvalidArgument, "spectrum of non-finite matrix");
  Spectrum out;
  if (A_in.rows() == 0) return out;

  MatrixXd B = A_in;
  const Eigen::VectorXd d = balance(B);
  Eigen::EigenSolver<MatrixXd> es;
  es.compute(B, vectors);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergenceQR, "shifted QR iteration did not converge");

  const Eigen::VectorXcd vals = es.eigenvalues();
  out.values.assign(vals.data(), vals.data() + vals.size());
  if (vectors) {
    out.vectors = d.cast<std::complex<double>>().asDiagonal() * es.eigenvectors();
    for (Index j = 0; j < out.vectors.cols(); ++j) out.vectors.col(j).normalize();
  }

  // Members of a real-Schur 2x2 block come out adjacent; make them exact conjugates.
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
    auto& a = out.values[i];
    auto& b = out.values[i + 1];
    if (a.imag() != 0.0 && std::abs(a - std::conj(b)) <= 1e-8 * std::abs(a)) {
      const std::complex<double> mean{0.5 * (a.real() + b.real()), 0.5 * (a.imag() - b.imag())};
      a = mean;
      b = std::conj(mean);
      ++i;
    }
  }
  return out;
}

double mechanical_fraction(const Eigen::VectorXcd& v, Index m, const ModeScales& scales) {
  const Index n = v.size() - 2 * m;
  const double u = v.head(m).squaredNorm() / (scales.displacement * scales.displacement);
  const double ud = v.segment(m, m).squaredNorm() / (scales.velocity * scales.velocity);
  const double t = n > 0 ? v.tail(n).squaredNorm() / (scales.temperature * scales.temperature) : 0.0;
  const double total = u + ud + t;
  return total > 0.0 ? (u + ud) / total : 0.0;
}

EigenResult extract_q(const Spectrum& spec, const StateSpaceOperator& op, double omega0_ref,
                      const ModeScales& scales) {
  if (spec.vectors.cols() != static_cast<Index>(spec.values.size()))
    throw Error(ErrorCode::InvalidArgument, "mode selection needs eigenvectors");
  EigenResult res;
  res.eigenvalues = spec.values;
  double radius = 0.0;
  for (const auto& l : spec.values) radius = std::max(radius, std::abs(l));
  const double zero_tol = 1e-9 * radius;

  std::size_t best = spec.values.size();
  double best_fraction = 0.0;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const auto l = spec.values[i];
    if (!(l.imag() > zero_tol)) continue;
    const double frac = mechanical_fraction(spec.vectors.col(static_cast<Index>(i)), op.m, scales);
    if (frac < 0.5) continue;
    if (best == spec.values.size() || l.imag() < spec.values[best].imag()) {
      best = i;
      best_fraction = frac;
    }
  }
  if (best == spec.values.size())
    throw Error(ErrorCode::NoMechanicalMode, "no oscillatory mechanical mode in the spectrum");

  res.fundamental = spec.values[best];
  res.omega = std::abs(res.fundamental.imag());
  res.q_inverse = 2.0 * std::abs(res.fundamental.real()) / res.omega;
  res.mechanical_fraction = best_fraction;
  res.omega0_ref = omega0_ref;
  res.shift = omega0_ref > 0.0 ? (res.omega - omega0_ref) / omega0_ref : 0.0;
  return res;
}

}  // namespace tedfem
