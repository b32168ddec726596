#pragma once

// Brute-force steady state from the null space of the vectorized
// Liouvillian. Column-major vectorization: vec(A X B) = (B^T ⊗ A) vec(X).

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "dicke/basis.hpp"
#include "dicke/density.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

inline constexpr int kLiouvillianMaxN = 60;

struct LindbladGenerator {
  MatrixC hamiltonian;
  MatrixC jump;
};

// SDM: H = 0, L = (Sx - i zeta Sy)/sqrt(N). CRF: H = (upsilon/2) Sx,
// L = S-/sqrt(N). Rates set to 1. Accepts negative zeta.
inline LindbladGenerator lindblad_generator(const ModelParams& p) {
  const DickeBasis& b = p.basis();
  const double rn = std::sqrt(static_cast<double>(p.n()));
  LindbladGenerator g;
  if (p.model() == Model::sdm) {
    g.hamiltonian = MatrixC::Zero(b.dim(), b.dim());
    g.jump = (banded::sx(b).to_dense() - cplx{0.0, p.value()} * banded::sy(b).to_dense()) / rn;
  } else {
    g.hamiltonian = 0.5 * p.value() * banded::sx(b).to_dense();
    g.jump = banded::sminus(b).to_dense() / rn;
  }
  return g;
}

// d vec(rho)/dt = L vec(rho), dissipator D(O) rho = O rho O^dag - {O^dag O, rho}/2.
inline MatrixC liouvillian_matrix(const ModelParams& p) {
  const LindbladGenerator g = lindblad_generator(p);
  const int n = p.basis().dim();
  const MatrixC id = MatrixC::Identity(n, n);
  const MatrixC& h = g.hamiltonian;
  const MatrixC& l = g.jump;
  const MatrixC ldl = l.adjoint() * l;
  const cplx mi{0.0, -1.0};
  MatrixC out = mi * (Eigen::kroneckerProduct(id, h).eval() - Eigen::kroneckerProduct(h.transpose(), id).eval());
  out += Eigen::kroneckerProduct(l.conjugate(), l).eval();
  out -= 0.5 * Eigen::kroneckerProduct(id, ldl).eval();
  out -= 0.5 * Eigen::kroneckerProduct(ldl.transpose(), id).eval();
  return out;
}

inline MatrixC unvec(const VectorC& v, int n) { return Eigen::Map<const MatrixC>(v.data(), n, n); }

inline VectorC vec(const MatrixC& m) { return Eigen::Map<const VectorC>(m.data(), m.size()); }

// Null vector via the trace-constrained system: one row of L is replaced by
// the trace functional. A second null direction makes that system singular,
// which the reciprocal condition estimate exposes.
inline DensityMatrix liouvillian_null_state(const ModelParams& p, double residual_tolerance = 1e-10) {
  if (p.n() > kLiouvillianMaxN)
    throw std::invalid_argument("liouvillian_null_state: N above " + std::to_string(kLiouvillianMaxN));
  const int n = p.basis().dim();
  const MatrixC lv = liouvillian_matrix(p);
  MatrixC sys = lv;
  sys.row(0).setZero();
  for (int i = 0; i < n; ++i) sys(0, i * n + i) = 1.0;
  VectorC rhs = VectorC::Zero(n * n);
  rhs[0] = 1.0;

  Eigen::PartialPivLU<MatrixC> lu(sys);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-13))
    throw NumericalError("liouvillian_null_state: degenerate or ill-conditioned null space", rcond);
  const VectorC x = lu.solve(rhs);
  MatrixC rho = unvec(x, n);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  DensityMatrix out(p.basis(), rho, Construction::null_space);
  out.normalize();
  out.residual = (lv * vec(out.matrix)).cwiseAbs().maxCoeff();
  out.log_condition = -std::log(rcond);
  if (!(out.residual <= residual_tolerance))
    throw NumericalError("liouvillian_null_state: residual above tolerance", out.residual);
  return out;
}

// Largest entrywise gap between the closed-form state and the Liouvillian
// null state.
inline double oracle_discrepancy(const ModelParams& p) {
  const DensityMatrix closed = solve_steady_state(p).dense();
  const DensityMatrix null = liouvillian_null_state(p);
  return (closed.matrix - null.matrix).cwiseAbs().maxCoeff();
}

}  // namespace dicke
