#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "dicke/basis.hpp"
#include "dicke/density.hpp"
#include "dicke/resolvent.hpp"

namespace dicke {

// The operator whose resolvent is the steady state. SDM: Sx - i zeta Sy.
// CRF: S- + i N upsilon / 2 (decay and drive combined).
inline BandedOperator effective_jump(const ModelParams& p) {
  const DickeBasis& b = p.basis();
  if (p.model() == Model::sdm) {
    const double a = 0.5 * (1.0 - p.value());
    const double c = 0.5 * (1.0 + p.value());
    return banded::splus(b) * cplx{a, 0.0} + banded::sminus(b) * cplx{c, 0.0};
  }
  BandedOperator id(b);
  for (int i = 0; i < b.dim(); ++i) id.set(i, i, {1.0, 0.0});
  return banded::sminus(b) + id * cplx{0.0, 0.5 * p.n() * p.value()};
}

inline VectorC basis_vector(const DickeBasis& b, int index) {
  VectorC v = VectorC::Zero(b.dim());
  v[index] = 1.0;
  return v;
}

struct DarkState {
  DickeBasis basis;
  VectorC amplitudes;
  double residual = 0.0;  // ||(Sx - i zeta Sy) v|| for unit v
};

// Even N: (Sx - i zeta Sy) v = 0 has zero diagonal in the m basis, so row k
// reads a c_{k-1} v_{k-1} + b c_k v_{k+1} = 0. Only even indices survive.
inline DarkState sdm_dark_state_even(const ModelParams& p, double tolerance = 1e-10) {
  if (p.model() != Model::sdm) throw std::invalid_argument("sdm_dark_state_even: model must be sdm");
  const DickeBasis& basis = p.basis();
  if (basis.odd()) throw std::invalid_argument("sdm_dark_state_even: N must be even");
  const double zeta = p.value();
  const double a = 0.5 * (1.0 - zeta);
  const double b = 0.5 * (1.0 + zeta);
  const int dim = basis.dim();

  std::vector<double> lv(dim, -INFINITY), sg(dim, 0.0);
  lv[0] = 0.0;
  sg[0] = 1.0;
  if (a > 0.0)
    for (int k = 1; k < dim - 1; k += 2) {
      lv[k + 1] = lv[k - 1] + std::log(a * basis.ladder(k - 1) / (b * basis.ladder(k)));
      sg[k + 1] = -sg[k - 1];
    }
  double top = -INFINITY;
  for (double x : lv) top = std::max(top, x);
  VectorC v = VectorC::Zero(dim);
  for (int k = 0; k < dim; ++k)
    if (sg[k] != 0.0) v[k] = sg[k] * std::exp(lv[k] - top);
  v /= v.norm();

  DarkState out{basis, v, 0.0};
  const BandedOperator jump = effective_jump(p);
  VectorC lvec = VectorC::Zero(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = std::max(0, i - 1); j <= std::min(dim - 1, i + 1); ++j) lvec[i] += jump.at(i, j) * v[j];
  out.residual = lvec.norm();
  if (!(out.residual <= tolerance))
    throw NumericalError("sdm_dark_state_even: residual above tolerance", out.residual);
  return out;
}

// Steady state in whichever representation the model admits: a pure vector
// (dark state, or the south-pole projector at zeta = 1 / upsilon = 0) or a
// factored resolvent.
struct SteadyState {
  ModelParams params;
  Construction construction;
  std::optional<VectorC> pure;
  std::optional<Resolvent> resolvent;
  double residual = 0.0;

  const DickeBasis& basis() const { return params.basis(); }
  DensityMatrix dense() const;
};

inline bool is_projector_point(const ModelParams& p) {
  return p.model() == Model::sdm ? p.value() == 1.0 : p.value() == 0.0;
}

inline SteadyState solve_steady_state(const ModelParams& p) {
  if (is_projector_point(p))
    return {p, Construction::projector, basis_vector(p.basis(), 0), std::nullopt, 0.0};
  if (p.model() == Model::sdm) {
    if (!p.basis().odd()) {
      DarkState d = sdm_dark_state_even(p);
      return {p, Construction::dark_state, d.amplitudes, std::nullopt, d.residual};
    }
    return {p, Construction::closed_form, std::nullopt, sdm_resolvent_blocks(p.basis(), p.value()), 0.0};
  }
  return {p, Construction::closed_form, std::nullopt, crf_resolvent_blocks(p.basis(), p.value()), 0.0};
}

// max |A^dag A rho - I / Tr(rho_raw)| relative to max |A^dag A|; rho is the
// normalized state. Banded A^dag A keeps this O(dim^2).
inline double resolvent_residual(const ModelParams& p, const DensityMatrix& rho) {
  const BandedOperator jump = effective_jump(p);
  const BandedOperator ata = jump.adjoint() * jump;
  const int n = rho.basis.dim();
  const double inv_z = std::exp(-rho.log_raw_trace);
  double worst = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc{0.0, 0.0};
      for (int k = std::max(0, i - 2); k <= std::min(n - 1, i + 2); ++k) acc += ata.at(i, k) * rho.matrix(k, j);
      if (i == j) acc -= inv_z;
      worst = std::max(worst, std::abs(acc));
    }
  for (int i = 0; i < n; ++i)
    for (int k = std::max(0, i - 2); k <= std::min(n - 1, i + 2); ++k) scale = std::max(scale, std::abs(ata.at(i, k)));
  return worst / scale;
}

inline DensityMatrix SteadyState::dense() const {
  if (pure) {
    DensityMatrix rho = DensityMatrix::pure(basis(), *pure, construction);
    rho.residual = residual;
    return rho;
  }
  DensityMatrix rho = resolvent->dense();
  rho.residual = resolvent_residual(params, rho);
  return rho;
}

inline DensityMatrix sdm_steady_state_odd(const ModelParams& p) {
  if (p.model() != Model::sdm || !p.basis().odd())
    throw std::invalid_argument("sdm_steady_state_odd: needs the sdm model with odd N");
  return solve_steady_state(p).dense();
}

inline DensityMatrix crf_steady_state(const ModelParams& p) {
  if (p.model() != Model::crf) throw std::invalid_argument("crf_steady_state: model must be crf");
  return solve_steady_state(p).dense();
}

struct ObservableRecord {
  std::string source = "numeric";
  double sx = 0.0, sy = 0.0, sz = 0.0, sx2 = 0.0;
  double var_sx = 0.0;
  double purity = NAN;
  double contrast = 0.0;  // <Sz>^2 (sdm) or <Sz>^2 + <Sy>^2 (crf)
  std::string contrast_kind;
  double xi2 = NAN;
  bool xi2_defined = false;
};

inline ObservableRecord make_record(Model model, int n, double sx, double sy, double sz, double sx2,
                                    double purity) {
  ObservableRecord r;
  r.sx = sx;
  r.sy = sy;
  r.sz = sz;
  r.sx2 = sx2;
  r.var_sx = sx2 - sx * sx;
  r.purity = purity;
  if (model == Model::sdm) {
    r.contrast = sz * sz;
    r.contrast_kind = "sz2";
  } else {
    r.contrast = sz * sz + sy * sy;
    r.contrast_kind = "sz2+sy2";
  }
  r.xi2_defined = r.contrast >= 1e-12 * n;
  if (r.xi2_defined) r.xi2 = n * r.var_sx / r.contrast;
  return r;
}

inline std::vector<BandedOperator> observable_set(const DickeBasis& b) {
  const BandedOperator sx = banded::sx(b);
  return {sx, banded::sy(b), banded::sz(b), sx * sx};
}

inline ObservableRecord observables(const DensityMatrix& rho, Model model) {
  const auto ops = observable_set(rho.basis);
  double v[4];
  for (int k = 0; k < 4; ++k) v[k] = expectation(ops[k], rho).real();
  return make_record(model, rho.basis.n_particles(), v[0], v[1], v[2], v[3], rho.purity());
}

// Structured evaluation: O(dim) for pure states, O(dim^2) for resolvents.
// Purity needs only singular values, so it stays O(dim^2) too.
inline ObservableRecord observables(const SteadyState& s, bool with_purity = true) {
  const auto ops = observable_set(s.basis());
  double v[4];
  double purity = 1.0;
  if (s.pure) {
    for (int k = 0; k < 4; ++k) v[k] = expectation(ops[k], *s.pure).real();
  } else {
    const ResolventMoments m = s.resolvent->moments(ops);
    for (int k = 0; k < 4; ++k) v[k] = m.values[k].real();
    purity = with_purity ? s.resolvent->spectrum(false).purity() : NAN;
  }
  return make_record(s.params.model(), s.params.n(), v[0], v[1], v[2], v[3], purity);
}

}  // namespace dicke
