#pragma once

// Critical-region oscillator: M^dag M |mu_k> = |mu_k> / mu~_k with
// M = y + i (q^2 + eta), y = -i d/dq. Expanded, M^dag M = y^2 + (q^2+eta)^2 + 2q.
// Discretized on a periodic uniform grid with the spectral second derivative.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "dicke/common.hpp"
#include "dicke/spectrum.hpp"

namespace dicke {

struct OscillatorGrid {
  int points = 512;
  double q_max = 0.0;  // 0 selects max(8, 6 + 2 sqrt|eta|)
};

struct OscillatorSolution {
  double eta = 0.0;
  double q_max = 0.0;
  int points = 0;
  double mu0_tilde = 0.0;
  double y_variance = 0.0;          // <mu_0| y^2 |mu_0>
  std::vector<double> mu_tilde;     // first levels, descending
  std::vector<double> y2, q2;       // <mu_k| y^2 |mu_k>, <mu_k| q^2 |mu_k>
  double refined_change = NAN;      // |Δ(1/mu0)| / (1/mu0) after halving the spacing
  bool converged = true;
};

// Periodic spectral second-derivative matrix on n equispaced points over a
// period of length len (n even).
inline Eigen::MatrixXd spectral_d2(int n, double len) {
  if (n < 4 || n % 2) throw std::invalid_argument("spectral_d2: n must be even and >= 4");
  const double h = 2.0 * kPi / n;
  const double scale = std::pow(2.0 * kPi / len, 2);
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = i - j;
      if (k == 0) {
        d(i, j) = -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
      } else {
        const double s = std::sin(0.5 * k * h);
        d(i, j) = -((k % 2 == 0) ? 1.0 : -1.0) / (2.0 * s * s);
      }
      d(i, j) *= scale;
    }
  return d;
}

inline double oscillator_q_max(double eta) { return std::max(8.0, 6.0 + 2.0 * std::sqrt(std::abs(eta))); }

namespace detail {

struct OscillatorMatrices {
  Eigen::MatrixXd h, minus_d2;
  Eigen::VectorXd q;
};

inline OscillatorMatrices oscillator_matrices(double eta, int n, double q_max) {
  const double len = 2.0 * q_max;
  OscillatorMatrices m;
  m.q.resize(n);
  for (int i = 0; i < n; ++i) m.q[i] = -q_max + len * i / n;
  m.minus_d2 = -spectral_d2(n, len);
  m.h = m.minus_d2;
  for (int i = 0; i < n; ++i) {
    const double v = m.q[i] * m.q[i] + eta;
    m.h(i, i) += v * v + 2.0 * m.q[i];
  }
  return m;
}

}  // namespace detail

inline OscillatorSolution solve_oscillator(double eta, const OscillatorGrid& grid = {}, int levels = 60,
                                           bool check_convergence = true) {
  if (!std::isfinite(eta)) throw std::domain_error("solve_oscillator: eta must be finite");
  OscillatorSolution out;
  out.eta = eta;
  out.points = grid.points;
  out.q_max = grid.q_max > 0.0 ? grid.q_max : oscillator_q_max(eta);
  if (out.q_max < 3.0 + 2.0 * std::sqrt(std::abs(eta)))
    throw std::invalid_argument("solve_oscillator: q_max below 3 + 2 sqrt|eta|");

  const auto m = detail::oscillator_matrices(eta, grid.points, out.q_max);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.h);
  if (es.info() != Eigen::Success) throw NumericalError("solve_oscillator: eigensolver failed", es.info());
  const int count = std::min(levels, grid.points);
  for (int k = 0; k < count; ++k) {
    const double ev = es.eigenvalues()[k];
    const Eigen::VectorXd v = es.eigenvectors().col(k);
    out.mu_tilde.push_back(1.0 / ev);
    out.y2.push_back(v.dot(m.minus_d2 * v));
    out.q2.push_back(v.cwiseProduct(v).dot(m.q.cwiseProduct(m.q)));
  }
  out.mu0_tilde = out.mu_tilde[0];
  out.y_variance = out.y2[0];

  if (check_convergence) {
    const auto fine = detail::oscillator_matrices(eta, 2 * grid.points, out.q_max);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ef(fine.h, Eigen::EigenvaluesOnly);
    const double e0 = es.eigenvalues()[0], e1 = ef.eigenvalues()[0];
    out.refined_change = std::abs(e1 - e0) / std::abs(e1);
    out.converged = out.refined_change < 0.01;
    if (!out.converged)
      throw NumericalError("solve_oscillator: grid not converged (halved spacing moved 1/mu0 by > 1%)",
                           out.refined_change);
  }
  return out;
}

struct OscillatorTails {
  TailFit mu, y2, q2;
};

inline OscillatorTails oscillator_tails(const OscillatorSolution& s, int k_min = 10, int k_max = 50) {
  return {fit_tail(s.mu_tilde, k_min, k_max), fit_tail(s.y2, k_min, k_max), fit_tail(s.q2, k_min, k_max)};
}

}  // namespace dicke
