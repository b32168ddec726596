#pragma once

// Both model steady states are resolvents rho ∝ (A^dag A)^{-1} where A is,
// after a basis permutation and a diagonal phase, a direct sum of real
// upper-bidiagonal blocks R. Everything here works on that factored form:
//
//   rho_raw = sum_b P_b D_b (R_b^T R_b)^{-1} D_b^dag P_b^T
//
// so the exponentially ill-conditioned A^dag A is never formed.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <lapacke.h>

#include "dicke/basis.hpp"
#include "dicke/density.hpp"

namespace dicke {

struct BidiagonalBlock {
  std::vector<double> diag;   // n entries
  std::vector<double> super;  // n-1 entries, R(r, r+1)
  std::vector<int> index;     // basis index of block coordinate r
  std::vector<cplx> phase;    // D_b(r, r)

  int size() const { return static_cast<int>(diag.size()); }
};

// Log-scaled sum: value = sum * exp(log_max), accumulated without overflow.
class LogAccumulator {
 public:
  void add(double log_weight, double value) {
    if (log_weight > log_max_) {
      if (std::isfinite(log_max_)) sum_ *= std::exp(log_max_ - log_weight);
      log_max_ = log_weight;
    }
    sum_ += std::exp(log_weight - log_max_) * value;
  }
  double log() const { return std::log(sum_) + log_max_; }

 private:
  double log_max_ = -std::numeric_limits<double>::infinity();
  double sum_ = 0.0;
};

struct BlockSvd {
  std::vector<double> sigma;  // descending
  Eigen::MatrixXd vt;         // rows are right singular vectors (empty if not requested)
};

// High-relative-accuracy singular values of an upper-bidiagonal matrix.
inline BlockSvd bidiagonal_svd(const BidiagonalBlock& blk, bool vectors) {
  const int n = blk.size();
  BlockSvd out;
  out.sigma = blk.diag;
  std::vector<double> e = blk.super;
  e.push_back(0.0);
  double dummy = 0.0;
  if (vectors) out.vt = Eigen::MatrixXd::Identity(n, n);
  const lapack_int info =
      LAPACKE_dbdsqr(LAPACK_COL_MAJOR, 'U', n, vectors ? n : 0, 0, 0, out.sigma.data(), e.data(),
                     vectors ? out.vt.data() : &dummy, vectors ? n : 1, &dummy, 1, &dummy, 1);
  if (info != 0) throw NumericalError("bidiagonal SVD did not converge", static_cast<double>(info));
  return out;
}

// Block-local view of a banded operator: O'(r, s) = conj(D_r) O(P r, P s) D_s
// on |r - s| <= 2.
struct LocalBand {
  std::vector<std::array<cplx, 5>> rows;
  cplx at(int r, int off) const { return rows[r][off + 2]; }
};

inline LocalBand localize(const BandedOperator& op, const BidiagonalBlock& blk) {
  LocalBand out;
  const int n = blk.size();
  out.rows.assign(n, {});
  for (int r = 0; r < n; ++r)
    for (int off = -2; off <= 2; ++off) {
      const int s = r + off;
      if (s < 0 || s >= n) continue;
      out.rows[r][off + 2] = std::conj(blk.phase[r]) * op.at(blk.index[r], blk.index[s]) * blk.phase[s];
    }
  return out;
}

struct ResolventMoments {
  double log_raw_trace = 0.0;
  std::vector<cplx> values;  // Tr(rho O) / Tr(rho) per requested operator
};

struct ResolventSpectrum {
  std::vector<double> log_lambda;  // raw eigenvalues 1/sigma^2, descending, in log form
  std::vector<double> weights;     // normalized, sum 1
  MatrixC vectors;                 // columns; empty unless requested
  double log_raw_trace = 0.0;
  double log_condition = 0.0;      // ln(lambda_max / lambda_min)

  double dominant_weight() const { return weights.empty() ? 0.0 : weights.front(); }
  double purity() const {
    double p = 0.0;
    for (double w : weights) p += w * w;
    return p;
  }
};

class Resolvent {
 public:
  Resolvent(DickeBasis basis, std::vector<BidiagonalBlock> blocks)
      : basis_(basis), blocks_(std::move(blocks)) {
    int total = 0;
    for (const auto& b : blocks_) {
      total += b.size();
      if (static_cast<int>(b.super.size()) != std::max(b.size() - 1, 0) ||
          static_cast<int>(b.index.size()) != b.size() || static_cast<int>(b.phase.size()) != b.size())
        throw std::invalid_argument("Resolvent: inconsistent block");
      for (double d : b.diag)
        if (d == 0.0) throw NumericalError("Resolvent: singular bidiagonal factor", 0.0);
    }
    if (total != basis_.dim()) throw std::invalid_argument("Resolvent: blocks do not cover the basis");
  }

  const DickeBasis& basis() const { return basis_; }
  const std::vector<BidiagonalBlock>& blocks() const { return blocks_; }

  // Normalized expectations by sweeping the columns x_j = R^{-1} e_j:
  // Tr((R^T R)^{-1} O') = sum_j x_j^T O' x_j. O(dim^2) per operator.
  ResolventMoments moments(const std::vector<BandedOperator>& ops) const {
    const std::size_t nops = ops.size();

    // Accumulate trace and each operator under one shared log scale.
    double log_max = -std::numeric_limits<double>::infinity();
    double trace_sum = 0.0;
    std::vector<cplx> op_sum(nops, cplx{0.0, 0.0});

    for (const auto& blk : blocks_) {
      std::vector<LocalBand> local;
      local.reserve(nops);
      for (const auto& op : ops) local.push_back(localize(op, blk));
      const int n = blk.size();
      // Back-substitution x_i = -(e_i/d_i) x_{i+1} in log magnitude and
      // sign, since |x| can fall and then climb by thousands of e-folds.
      std::vector<double> log_ratio(n, 0.0), sign_ratio(n, 1.0);
      for (int i = 0; i + 1 < n; ++i) {
        const double r = -blk.super[i] / blk.diag[i];
        log_ratio[i] = std::log(std::abs(r));
        sign_ratio[i] = r < 0.0 ? -1.0 : 1.0;
      }
      std::vector<double> lx(n), sx(n), x(n);
      for (int j = 0; j < n; ++j) {
        lx[j] = -std::log(std::abs(blk.diag[j]));
        sx[j] = blk.diag[j] < 0.0 ? -1.0 : 1.0;
        double top = lx[j];
        for (int i = j - 1; i >= 0; --i) {
          lx[i] = lx[i + 1] + log_ratio[i];
          sx[i] = sx[i + 1] * sign_ratio[i];
          top = std::max(top, lx[i]);
        }
        double norm2 = 0.0;
        for (int i = 0; i <= j; ++i) {
          const double t = lx[i] - top;
          x[i] = t < -745.0 ? 0.0 : sx[i] * std::exp(t);
          norm2 += x[i] * x[i];
        }
        const double log_w = 2.0 * top + std::log(norm2);
        if (log_w > log_max) {
          const double f = std::isfinite(log_max) ? std::exp(log_max - log_w) : 0.0;
          trace_sum *= f;
          for (auto& v : op_sum) v *= f;
          log_max = log_w;
        }
        const double scale = std::exp(log_w - log_max) / norm2;
        trace_sum += scale * norm2;
        for (std::size_t o = 0; o < nops; ++o) {
          cplx q{0.0, 0.0};
          for (int r = 0; r <= j; ++r) {
            if (x[r] == 0.0) continue;
            cplx row{0.0, 0.0};
            const int s_lo = std::max(r - 2, 0), s_hi = std::min(r + 2, j);
            for (int s = s_lo; s <= s_hi; ++s) row += local[o].at(r, s - r) * x[s];
            q += x[r] * row;
          }
          op_sum[o] += scale * q;
        }
      }
    }
    ResolventMoments out;
    out.log_raw_trace = std::log(trace_sum) + log_max;
    out.values.resize(nops);
    for (std::size_t o = 0; o < nops; ++o) out.values[o] = op_sum[o] / trace_sum;
    return out;
  }

  double log_raw_trace() const { return moments({}).log_raw_trace; }

  ResolventSpectrum spectrum(bool vectors) const {
    struct Entry {
      double log_lambda;
      int block;
      int k;
    };
    std::vector<BlockSvd> svds;
    std::vector<Entry> entries;
    int underflowed = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      svds.push_back(bidiagonal_svd(blocks_[b], vectors));
      const auto& s = svds.back().sigma;
      for (int k = 0; k < static_cast<int>(s.size()); ++k) {
        double ll = std::numeric_limits<double>::infinity();
        if (s[k] > 1e-290)
          ll = -2.0 * std::log(s[k]);
        else
          ++underflowed;
        entries.push_back({ll, static_cast<int>(b), k});
      }
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const Entry& a, const Entry& b) { return a.log_lambda > b.log_lambda; });

    ResolventSpectrum out;
    out.log_raw_trace = log_raw_trace();
    if (underflowed > 1)
      throw NumericalError("Resolvent: more than one singular value underflowed", underflowed);
    if (underflowed == 1) {
      // The lost eigenvalue is recovered from the trace, which the column
      // sweep computes without ever forming it.
      LogAccumulator rest;
      for (std::size_t i = 1; i < entries.size(); ++i) rest.add(entries[i].log_lambda, 1.0);
      const double gap = entries.size() > 1 ? rest.log() - out.log_raw_trace : -INFINITY;
      entries[0].log_lambda = out.log_raw_trace + std::log1p(-std::exp(std::min(gap, 0.0)));
    }
    for (const auto& e : entries) out.log_lambda.push_back(e.log_lambda);
    for (double ll : out.log_lambda) out.weights.push_back(std::exp(ll - out.log_raw_trace));
    const double wsum = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
    for (double& w : out.weights) w /= wsum;
    out.log_condition = out.log_lambda.front() - out.log_lambda.back();

    if (vectors) {
      const int dim = basis_.dim();
      out.vectors = MatrixC::Zero(dim, dim);
      for (int c = 0; c < dim; ++c) {
        const Entry& e = entries[c];
        const auto& blk = blocks_[e.block];
        for (int r = 0; r < blk.size(); ++r)
          out.vectors(blk.index[r], c) = blk.phase[r] * svds[e.block].vt(e.k, r);
      }
    }
    return out;
  }

  // Dense trace-one state from the spectral form; O(dim^3).
  DensityMatrix dense() const {
    const ResolventSpectrum sp = spectrum(true);
    MatrixC m = sp.vectors * Eigen::Map<const Eigen::VectorXd>(sp.weights.data(), sp.weights.size())
                                 .cast<cplx>()
                                 .asDiagonal() *
                sp.vectors.adjoint();
    m = 0.5 * (m + m.adjoint()).eval();
    DensityMatrix rho(basis_, std::move(m), Construction::closed_form);
    rho.log_raw_trace = sp.log_raw_trace;
    rho.log_condition = sp.log_condition;
    return rho;
  }

 private:
  DickeBasis basis_;
  std::vector<BidiagonalBlock> blocks_;
};

// SDM jump (Sx - i zeta Sy) = a S+ + b S-, a = (1-zeta)/2, b = (1+zeta)/2.
// It maps even basis indices to odd ones and back, so for odd N the
// resolvent splits into an even-column block (upper bidiagonal) and an
// odd-column block (lower bidiagonal, reversed to upper).
inline Resolvent sdm_resolvent_blocks(const DickeBasis& basis, double zeta) {
  if (!basis.odd()) throw std::invalid_argument("sdm resolvent: N must be odd");
  const double a = 0.5 * (1.0 - zeta);
  const double b = 0.5 * (1.0 + zeta);
  const int n = basis.dim() / 2;
  BidiagonalBlock even, odd;
  for (int j = 0; j < n; ++j) {
    even.diag.push_back(a * basis.ladder(2 * j));
    if (j + 1 < n) even.super.push_back(b * basis.ladder(2 * j + 1));
    even.index.push_back(2 * j);
    even.phase.emplace_back(1.0, 0.0);
  }
  for (int r = 0; r < n; ++r) {
    const int j = n - 1 - r;
    odd.diag.push_back(b * basis.ladder(2 * j));
    if (r + 1 < n) odd.super.push_back(a * basis.ladder(2 * (j - 1) + 1));
    odd.index.push_back(2 * j + 1);
    odd.phase.emplace_back(1.0, 0.0);
  }
  return Resolvent(basis, {even, odd});
}

// CRF effective operator S- + i N upsilon/2 = D (i R) D^dag with
// D = diag(i^k) and R = S- + (N upsilon/2) real upper bidiagonal.
inline Resolvent crf_resolvent_blocks(const DickeBasis& basis, double upsilon) {
  const int dim = basis.dim();
  const double c = 0.5 * basis.n_particles() * upsilon;
  BidiagonalBlock blk;
  static const cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int k = 0; k < dim; ++k) {
    blk.diag.push_back(c);
    if (k + 1 < dim) blk.super.push_back(basis.ladder(k));
    blk.index.push_back(k);
    blk.phase.push_back(kPhases[k % 4]);
  }
  return Resolvent(basis, {blk});
}

}  // namespace dicke
