#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dicke/basis.hpp"
#include "dicke/density.hpp"

namespace dicke {

struct SpinCoherentState {
  double theta = 0.0;
  double phi = 0.0;
  VectorC amplitudes;
};

namespace detail {

// |<m = S-k | theta, phi>| in log form: ln sqrt(C(N,k)) + (N-k) ln cos(theta/2)
// + k ln sin(theta/2). Index i = N - k in ascending-m order.
inline std::vector<double> coherent_log_magnitudes(int n, double theta) {
  const double lc = std::log(std::cos(0.5 * theta));
  const double ls = std::log(std::sin(0.5 * theta));
  const double lgn = std::lgamma(n + 1.0);
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) {
    double v = 0.5 * (lgn - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
    if (n - k > 0) v += (n - k) * lc;
    if (k > 0) v += k * ls;
    out[n - k] = v;
  }
  return out;
}

inline void check_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= kPi)) throw std::domain_error("coherent_state: theta outside [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi)) throw std::domain_error("coherent_state: phi outside [0, 2 pi)");
}

}  // namespace detail

// |theta, phi> = cos(theta/2)^N exp(tan(theta/2) e^{i phi} S-) |m = N/2>,
// with <S> = (N/2)(sin theta cos phi, sin theta sin phi, cos theta).
inline SpinCoherentState coherent_state(const DickeBasis& basis, double theta, double phi) {
  detail::check_angles(theta, phi);
  const int n = basis.n_particles();
  const auto lm = detail::coherent_log_magnitudes(n, theta);
  SpinCoherentState out{theta, phi, VectorC(basis.dim())};
  for (int i = 0; i <= n; ++i) {
    const int k = n - i;
    out.amplitudes[i] = std::exp(lm[i]) * std::polar(1.0, k * phi);
  }
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

struct HusimiGridSpec {
  int n_theta = 200;
  int n_phi = 400;
};

// Q on theta_i = (i + 1/2) pi / n_theta, phi_j = 2 pi j / n_phi; values are
// row-major in theta.
struct HusimiGrid {
  std::vector<double> thetas;
  std::vector<double> phis;
  std::vector<double> values;

  double at(int it, int ip) const { return values[static_cast<std::size_t>(it) * phis.size() + ip]; }

  // Midpoint-rule integral of Q over the sphere.
  double sphere_integral() const {
    const double dt = kPi / thetas.size(), dp = 2.0 * kPi / phis.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < thetas.size(); ++i)
      for (std::size_t j = 0; j < phis.size(); ++j) acc += at(i, j) * std::sin(thetas[i]);
    return acc * dt * dp;
  }

  double max_value() const { return *std::max_element(values.begin(), values.end()); }

  double median_value() const {
    std::vector<double> v = values;
    auto mid = v.begin() + v.size() / 2;
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
  }

  // Grid position of the maximum.
  std::pair<int, int> argmax() const {
    const auto it = std::max_element(values.begin(), values.end());
    const std::size_t k = it - values.begin();
    return {static_cast<int>(k / phis.size()), static_cast<int>(k % phis.size())};
  }

  void write_csv(std::ostream& os) const {
    os << "theta,phi,Q\n";
    char buf[96];
    for (std::size_t i = 0; i < thetas.size(); ++i)
      for (std::size_t j = 0; j < phis.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\n", thetas[i], phis[j], at(i, j));
        os << buf;
      }
  }
};

inline double husimi_at(const DensityMatrix& rho, double theta, double phi) {
  const VectorC psi = coherent_state(rho.basis, theta, phi).amplitudes;
  return std::max(0.0, (psi.adjoint() * rho.matrix * psi)(0, 0).real()) / (4.0 * kPi);
}

// Per theta ring, Q(phi) = C_0 + 2 Re sum_{d>0} C_d e^{-i d phi} with
// C_d = sum_i a_i a_{i+d} rho_{i,i+d}, a_i the coherent-state magnitudes.
// Magnitudes below 1e-20 of the ring maximum are dropped.
inline HusimiGrid husimi(const DensityMatrix& rho, const HusimiGridSpec& spec = {}) {
  if (spec.n_theta < 1 || spec.n_phi < 1) throw std::invalid_argument("husimi: empty grid");
  if (rho.hermiticity_error() > 1e-9) throw std::invalid_argument("husimi: density matrix is not Hermitian");
  const int n = rho.basis.n_particles();
  const int dim = rho.basis.dim();
  HusimiGrid g;
  for (int i = 0; i < spec.n_theta; ++i) g.thetas.push_back((i + 0.5) * kPi / spec.n_theta);
  for (int j = 0; j < spec.n_phi; ++j) g.phis.push_back(2.0 * kPi * j / spec.n_phi);
  g.values.assign(static_cast<std::size_t>(spec.n_theta) * spec.n_phi, 0.0);

  std::vector<double> a(dim);
  std::vector<cplx> c(dim);
  for (int it = 0; it < spec.n_theta; ++it) {
    const auto lm = detail::coherent_log_magnitudes(n, g.thetas[it]);
    const double top = *std::max_element(lm.begin(), lm.end());
    int lo = dim, hi = -1;
    for (int i = 0; i < dim; ++i) {
      const double t = lm[i] - top;
      a[i] = t < -46.0 ? 0.0 : std::exp(lm[i]);
      if (a[i] != 0.0) lo = std::min(lo, i), hi = std::max(hi, i);
    }
    for (int d = 0; d <= hi - lo; ++d) {
      cplx acc{0.0, 0.0};
      for (int i = lo; i + d <= hi; ++i) acc += a[i] * a[i + d] * rho.matrix(i, i + d);
      c[d] = acc;
    }
    for (int ip = 0; ip < spec.n_phi; ++ip) {
      const double phi = g.phis[ip];
      const cplx step = std::polar(1.0, -phi);
      cplx rot{1.0, 0.0};
      double q = c[0].real();
      for (int d = 1; d <= hi - lo; ++d) {
        rot *= step;
        q += 2.0 * (c[d] * rot).real();
      }
      g.values[static_cast<std::size_t>(it) * spec.n_phi + ip] = std::max(q, 0.0) / (4.0 * kPi);
    }
  }
  return g;
}

}  // namespace dicke
