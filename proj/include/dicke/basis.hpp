#pragma once

// Dicke manifold of N two-level systems: the (N+1)-dimensional symmetric
// sector with total spin S = N/2, and the collective spin operators on it.
//
// Basis ordering is ascending m: index i <-> m_i = -N/2 + i.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/common.hpp"

namespace dicke {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

class DickeBasis {
 public:
  explicit DickeBasis(int n_particles) : n_(n_particles) {
    if (n_particles < 1)
      throw std::invalid_argument("DickeBasis: N must be a positive integer, got " +
                                  std::to_string(n_particles));
  }

  // Accepts a real-valued particle count (e.g. parsed from a config) and
  // rejects anything that is not a positive integer.
  static DickeBasis checked(double n_particles) {
    if (!(n_particles >= 1.0) || std::floor(n_particles) != n_particles ||
        n_particles > 1e9)
      throw std::invalid_argument("DickeBasis: N must be a positive integer");
    return DickeBasis(static_cast<int>(n_particles));
  }

  int n_particles() const { return n_; }
  int dim() const { return n_ + 1; }
  double spin() const { return 0.5 * n_; }
  bool odd() const { return n_ % 2 != 0; }

  double m(int index) const { return -spin() + index; }

  std::vector<double> m_values() const {
    std::vector<double> out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = m(i);
    return out;
  }

  // <m_{i+1}| S+ |m_i> = sqrt(S(S+1) - m_i(m_i+1)), for i in [0, dim-2].
  // Written as sqrt((S - m)(S + m + 1)) to avoid cancellation at large S.
  double ladder(int index) const {
    const double s = spin();
    const double mi = m(index);
    return std::sqrt((s - mi) * (s + mi + 1.0));
  }

  friend bool operator==(const DickeBasis& a, const DickeBasis& b) { return a.n_ == b.n_; }

 private:
  int n_;
};

// Operator with nonzero entries only on diagonals |i - j| <= 2. Every
// collective operator this library needs (S±, Sx, Sy, Sz and their squares)
// fits, so large-N solvers work from this form and never build dim x dim.
class BandedOperator {
 public:
  static constexpr int kMaxOffset = 2;

  explicit BandedOperator(DickeBasis basis) : basis_(basis) {
    for (auto& d : diags_) d.assign(basis_.dim(), cplx{0.0, 0.0});
  }

  const DickeBasis& basis() const { return basis_; }
  int dim() const { return basis_.dim(); }

  // Element (i, j); zero outside the band.
  cplx at(int i, int j) const {
    const int off = j - i;
    if (off < -kMaxOffset || off > kMaxOffset) return {0.0, 0.0};
    if (i < 0 || j < 0 || i >= dim() || j >= dim()) return {0.0, 0.0};
    return diags_[off + kMaxOffset][i];
  }

  void set(int i, int j, cplx v) {
    const int off = j - i;
    if (off < -kMaxOffset || off > kMaxOffset)
      throw std::out_of_range("BandedOperator: entry outside band");
    diags_[off + kMaxOffset][i] = v;
  }

  BandedOperator adjoint() const {
    BandedOperator out(basis_);
    for (int i = 0; i < dim(); ++i)
      for (int off = -kMaxOffset; off <= kMaxOffset; ++off) {
        const int j = i + off;
        if (j >= 0 && j < dim()) out.set(j, i, std::conj(at(i, j)));
      }
    return out;
  }

  BandedOperator operator+(const BandedOperator& o) const { return combine(o, 1.0); }
  BandedOperator operator-(const BandedOperator& o) const { return combine(o, -1.0); }

  BandedOperator operator*(cplx s) const {
    BandedOperator out = *this;
    for (auto& d : out.diags_)
      for (auto& v : d) v *= s;
    return out;
  }

  // Product; throws if the result leaves the |i-j| <= 2 band.
  BandedOperator operator*(const BandedOperator& o) const {
    if (!(basis_ == o.basis_)) throw std::invalid_argument("BandedOperator: basis mismatch");
    BandedOperator out(basis_);
    for (int i = 0; i < dim(); ++i)
      for (int a = -kMaxOffset; a <= kMaxOffset; ++a) {
        const int k = i + a;
        if (k < 0 || k >= dim()) continue;
        const cplx lhs = at(i, k);
        if (lhs == cplx{0.0, 0.0}) continue;
        for (int b = -kMaxOffset; b <= kMaxOffset; ++b) {
          const int j = k + b;
          if (j < 0 || j >= dim()) continue;
          const cplx rhs = o.at(k, j);
          if (rhs == cplx{0.0, 0.0}) continue;
          if (std::abs(j - i) > kMaxOffset)
            throw std::domain_error("BandedOperator: product exceeds bandwidth 2");
          out.diags_[j - i + kMaxOffset][i] += lhs * rhs;
        }
      }
    return out;
  }

  MatrixC to_dense() const {
    MatrixC out = MatrixC::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      for (int off = -kMaxOffset; off <= kMaxOffset; ++off) {
        const int j = i + off;
        if (j >= 0 && j < dim()) out(i, j) = at(i, j);
      }
    return out;
  }

 private:
  BandedOperator combine(const BandedOperator& o, double sign) const {
    if (!(basis_ == o.basis_)) throw std::invalid_argument("BandedOperator: basis mismatch");
    BandedOperator out = *this;
    for (std::size_t d = 0; d < diags_.size(); ++d)
      for (int i = 0; i < dim(); ++i) out.diags_[d][i] += sign * o.diags_[d][i];
    return out;
  }

  DickeBasis basis_;
  std::array<std::vector<cplx>, 2 * kMaxOffset + 1> diags_;
};

namespace banded {

inline BandedOperator splus(const DickeBasis& b) {
  BandedOperator op(b);
  for (int i = 0; i + 1 < b.dim(); ++i) op.set(i + 1, i, b.ladder(i));
  return op;
}

inline BandedOperator sminus(const DickeBasis& b) { return splus(b).adjoint(); }

inline BandedOperator sz(const DickeBasis& b) {
  BandedOperator op(b);
  for (int i = 0; i < b.dim(); ++i) op.set(i, i, b.m(i));
  return op;
}

inline BandedOperator sx(const DickeBasis& b) { return (splus(b) + sminus(b)) * cplx{0.5, 0.0}; }

inline BandedOperator sy(const DickeBasis& b) {
  return (splus(b) - sminus(b)) * cplx{0.0, -0.5};
}

}  // namespace banded

// Dense collective operator on a given Dicke basis.
struct CollectiveOperator {
  DickeBasis basis;
  MatrixC matrix;

  CollectiveOperator(DickeBasis b, MatrixC m) : basis(b), matrix(std::move(m)) {
    if (matrix.rows() != basis.dim() || matrix.cols() != basis.dim())
      throw std::invalid_argument("CollectiveOperator: matrix shape does not match basis");
  }

  explicit CollectiveOperator(const BandedOperator& op) : CollectiveOperator(op.basis(), op.to_dense()) {}

  CollectiveOperator adjoint() const { return {basis, matrix.adjoint()}; }

  CollectiveOperator operator*(const CollectiveOperator& o) const {
    check_same(o);
    return {basis, matrix * o.matrix};
  }
  CollectiveOperator operator+(const CollectiveOperator& o) const {
    check_same(o);
    return {basis, matrix + o.matrix};
  }
  CollectiveOperator operator-(const CollectiveOperator& o) const {
    check_same(o);
    return {basis, matrix - o.matrix};
  }

  double hermiticity_error() const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }

 private:
  void check_same(const CollectiveOperator& o) const {
    if (!(basis == o.basis)) throw std::invalid_argument("CollectiveOperator: basis mismatch");
  }
};

struct SpinOperators {
  CollectiveOperator sx, sy, sz, sminus, splus;
};

// Sz diagonal with entries m; S- carries sqrt(S(S+1) - m(m-1)) on the
// superdiagonal (ascending m); Sx = (S+ + S-)/2, Sy = (S+ - S-)/(2i).
inline SpinOperators build_operators(const DickeBasis& basis) {
  return {CollectiveOperator(banded::sx(basis)), CollectiveOperator(banded::sy(basis)),
          CollectiveOperator(banded::sz(basis)), CollectiveOperator(banded::sminus(basis)),
          CollectiveOperator(banded::splus(basis))};
}

}  // namespace dicke
