#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dicke/basis.hpp"

namespace dicke {

enum class Model { sdm, crf };

inline std::string to_string(Model m) { return m == Model::sdm ? "sdm" : "crf"; }

inline Model parse_model(const std::string& s) {
  if (s == "sdm") return Model::sdm;
  if (s == "crf") return Model::crf;
  throw std::invalid_argument("unknown model '" + s + "' (expected sdm or crf)");
}

// Model selector plus control parameter. SDM: zeta in (0, 1], the squeezing
// strength of the jump operator (Sx - i zeta Sy). CRF: upsilon = 2 Omega/Gamma
// >= 0, the drive relative to collective decay. Rates are fixed to 1.
class ModelParams {
 public:
  static ModelParams sdm(int n, double zeta) {
    if (!(zeta > 0.0 && zeta <= 1.0))
      throw std::invalid_argument("sdm: zeta must lie in (0, 1], got " + std::to_string(zeta));
    return ModelParams(Model::sdm, n, zeta);
  }

  // Either sign of zeta; only the Liouvillian oracle accepts zeta < 0.
  static ModelParams sdm_signed(int n, double zeta) {
    if (!(std::abs(zeta) > 0.0 && std::abs(zeta) <= 1.0))
      throw std::invalid_argument("sdm: |zeta| must lie in (0, 1]");
    return ModelParams(Model::sdm, n, zeta);
  }

  static ModelParams crf(int n, double upsilon) {
    if (!(upsilon >= 0.0) || !std::isfinite(upsilon))
      throw std::invalid_argument("crf: upsilon must be finite and >= 0");
    return ModelParams(Model::crf, n, upsilon);
  }

  static ModelParams make(Model m, int n, double value) {
    return m == Model::sdm ? sdm(n, value) : crf(n, value);
  }

  Model model() const { return model_; }
  const DickeBasis& basis() const { return basis_; }
  int n() const { return basis_.n_particles(); }
  double value() const { return value_; }
  double zeta() const {
    if (model_ != Model::sdm) throw std::logic_error("zeta requested from a crf model");
    return value_;
  }
  double upsilon() const {
    if (model_ != Model::crf) throw std::logic_error("upsilon requested from an sdm model");
    return value_;
  }

 private:
  ModelParams(Model m, int n, double v) : model_(m), basis_(n), value_(v) {}
  Model model_;
  DickeBasis basis_;
  double value_;
};

enum class Construction { closed_form, dark_state, null_space, projector };

inline std::string to_string(Construction c) {
  switch (c) {
    case Construction::closed_form: return "closed-form";
    case Construction::dark_state: return "dark-state";
    case Construction::null_space: return "null-space";
    case Construction::projector: return "projector";
  }
  return "?";
}

// Dense trace-one state. log_raw_trace keeps ln Tr of the unnormalized
// resolvent (A^dag A)^{-1} when the state came from one, since the analytic
// eigenvalue formulas refer to that scale.
struct DensityMatrix {
  DickeBasis basis;
  MatrixC matrix;
  Construction construction = Construction::closed_form;
  double residual = 0.0;
  double log_condition = 0.0;
  double log_raw_trace = 0.0;

  DensityMatrix(DickeBasis b, MatrixC m, Construction c = Construction::closed_form)
      : basis(b), matrix(std::move(m)), construction(c) {
    if (matrix.rows() != basis.dim() || matrix.cols() != basis.dim())
      throw std::invalid_argument("DensityMatrix: matrix shape does not match basis");
  }

  static DensityMatrix pure(DickeBasis b, const VectorC& v, Construction c) {
    const VectorC u = v / v.norm();
    return DensityMatrix(b, u * u.adjoint(), c);
  }

  static DensityMatrix maximally_mixed(DickeBasis b) {
    return DensityMatrix(b, MatrixC::Identity(b.dim(), b.dim()) / double(b.dim()));
  }

  double trace() const { return matrix.trace().real(); }
  double hermiticity_error() const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }
  double purity() const { return matrix.cwiseAbs2().sum(); }
  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<MatrixC> es(matrix, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }
  void normalize() {
    const double t = trace();
    if (!(t > 0.0)) throw NumericalError("DensityMatrix: non-positive trace", t);
    matrix /= t;
  }
};

inline cplx expectation(const CollectiveOperator& op, const DensityMatrix& rho) {
  if (!(op.basis == rho.basis))
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  return (rho.matrix.array() * op.matrix.transpose().array()).sum();
}

inline cplx expectation(const BandedOperator& op, const DensityMatrix& rho) {
  if (!(op.basis() == rho.basis))
    throw std::invalid_argument("expectation: operator and state dimensions differ");
  cplx acc{0.0, 0.0};
  const int n = rho.basis.dim();
  for (int i = 0; i < n; ++i)
    for (int off = -BandedOperator::kMaxOffset; off <= BandedOperator::kMaxOffset; ++off) {
      const int j = i + off;
      if (j >= 0 && j < n) acc += op.at(i, j) * rho.matrix(j, i);
    }
  return acc;
}

inline cplx expectation(const BandedOperator& op, const VectorC& psi) {
  if (psi.size() != op.dim()) throw std::invalid_argument("expectation: dimension mismatch");
  cplx acc{0.0, 0.0};
  for (int i = 0; i < op.dim(); ++i)
    for (int off = -BandedOperator::kMaxOffset; off <= BandedOperator::kMaxOffset; ++off) {
      const int j = i + off;
      if (j >= 0 && j < op.dim()) acc += std::conj(psi[i]) * op.at(i, j) * psi[j];
    }
  return acc / psi.squaredNorm();
}

}  // namespace dicke
