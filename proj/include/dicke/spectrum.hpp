#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dicke/density.hpp"
#include "dicke/resolvent.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

// Eigen-decomposition of a steady state, descending. Raw eigenvalues are
// those of the unnormalized resolvent (A^dag A)^{-1}; they are kept in log
// form because the dominant one grows like e^{2 zeta N}.
struct SteadyStateSpectrum {
  DickeBasis basis;
  std::vector<double> log_lambda_raw;
  std::vector<double> lambda;  // normalized, sum 1
  MatrixC vectors;             // columns, may be empty

  int size() const { return static_cast<int>(lambda.size()); }
  double lambda_raw(int k) const { return std::exp(log_lambda_raw[k]); }
  double dominant_weight() const { return lambda.front(); }
  double purity() const {
    double p = 0.0;
    for (double w : lambda) p += w * w;
    return p;
  }

  MatrixC reconstruct() const {
    if (vectors.size() == 0) throw std::logic_error("spectrum: eigenvectors were not computed");
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(lambda.data(), lambda.size());
    return vectors * w.cast<cplx>().asDiagonal() * vectors.adjoint();
  }

  // k, ln lambda_raw, lambda_raw, lambda_norm, <k|Sz|k>, <k|Sx^2|k>.
  void write_csv(std::ostream& os) const {
    const bool diag = vectors.size() != 0;
    os << "k,log_lambda_raw,lambda_raw,lambda_norm" << (diag ? ",sz,sx2" : "") << "\n";
    BandedOperator sz = banded::sz(basis), sx = banded::sx(basis);
    BandedOperator sx2 = sx * sx;
    char buf[160];
    for (int k = 0; k < size(); ++k) {
      std::snprintf(buf, sizeof buf, "%d,%.12e,%.12e,%.12e", k, log_lambda_raw[k], lambda_raw(k), lambda[k]);
      os << buf;
      if (diag) {
        const VectorC v = vectors.col(k);
        std::snprintf(buf, sizeof buf, ",%.12e,%.12e", expectation(sz, v).real(), expectation(sx2, v).real());
        os << buf;
      }
      os << "\n";
    }
  }
};

// Dense Hermitian eigendecomposition. Raw values use rho.log_raw_trace.
inline SteadyStateSpectrum spectrum(const DensityMatrix& rho) {
  if (rho.hermiticity_error() > 1e-9) throw std::invalid_argument("spectrum: density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(rho.matrix);
  if (es.info() != Eigen::Success) throw NumericalError("spectrum: eigensolver did not converge", es.info());
  const int n = rho.basis.dim();
  SteadyStateSpectrum out{rho.basis, {}, {}, MatrixC(n, n)};
  for (int k = 0; k < n; ++k) {
    const int src = n - 1 - k;
    const double lam = es.eigenvalues()[src];
    out.lambda.push_back(lam);
    out.log_lambda_raw.push_back(std::log(std::max(lam, 0.0)) + rho.log_raw_trace);
    out.vectors.col(k) = es.eigenvectors().col(src);
  }
  return out;
}

// Structured spectrum from the bidiagonal factors; eigenvectors are O(dim^3)
// and optional.
inline SteadyStateSpectrum spectrum(const SteadyState& s, bool vectors = true) {
  const int n = s.basis().dim();
  if (s.pure) {
    SteadyStateSpectrum out{s.basis(), {}, {}, {}};
    out.lambda.assign(n, 0.0);
    out.lambda[0] = 1.0;
    out.log_lambda_raw.assign(n, -INFINITY);
    out.log_lambda_raw[0] = INFINITY;
    if (vectors) {
      Eigen::HouseholderQR<MatrixC> qr(*s.pure / s.pure->norm());
      out.vectors = qr.householderQ() * MatrixC::Identity(n, n);
      out.vectors.col(0) = *s.pure / s.pure->norm();
    }
    return out;
  }
  const ResolventSpectrum rs = s.resolvent->spectrum(vectors);
  return {s.basis(), rs.log_lambda, rs.weights, rs.vectors};
}

// sum_{k >= 1} lambda_raw_k <k|O|k>: everything but the dominant state.
inline double bulk_sum(const SteadyStateSpectrum& sp, const BandedOperator& op) {
  if (sp.vectors.size() == 0) throw std::logic_error("bulk_sum: eigenvectors were not computed");
  double acc = 0.0;
  for (int k = 1; k < sp.size(); ++k) {
    if (!std::isfinite(sp.log_lambda_raw[k])) continue;
    acc += sp.lambda_raw(k) * expectation(op, VectorC(sp.vectors.col(k))).real();
  }
  return acc;
}

struct TailFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double residual = 0.0;  // rms in log space
  int k_min = 0, k_max = 0;
};

// Least squares of ln v_k against ln k over k in [k_min, k_max].
inline TailFit fit_tail(const std::vector<double>& values, int k_min, int k_max) {
  if (k_min < 1 || k_max <= k_min || k_max >= static_cast<int>(values.size()))
    throw std::invalid_argument("fit_tail: window outside the available range");
  const int m = k_max - k_min + 1;
  Eigen::MatrixXd a(m, 2);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const int k = k_min + i;
    if (!(values[k] > 0.0)) throw std::domain_error("fit_tail: non-positive value in window");
    a(i, 0) = 1.0;
    a(i, 1) = std::log(static_cast<double>(k));
    b[i] = std::log(values[k]);
  }
  const Eigen::Vector2d c = a.colPivHouseholderQr().solve(b);
  TailFit f;
  f.log_prefactor = c[0];
  f.exponent = c[1];
  f.residual = std::sqrt((a * c - b).squaredNorm() / m);
  f.k_min = k_min;
  f.k_max = k_max;
  return f;
}

inline std::pair<int, int> default_tail_window(int dim) { return {10, std::min(50, dim / 4)}; }

inline TailFit tail_exponent(const SteadyStateSpectrum& sp, int k_min = -1, int k_max = -1) {
  auto [lo, hi] = default_tail_window(sp.size());
  if (k_min > 0) lo = k_min;
  if (k_max > 0) hi = k_max;
  std::vector<double> raw(sp.size());
  for (int k = 0; k < sp.size(); ++k) raw[k] = sp.lambda[k];
  return fit_tail(raw, lo, hi);
}

}  // namespace dicke
