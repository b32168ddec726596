#include <gtest/gtest.h>

#include "dicke/oscillator.hpp"
#include "dicke/special.hpp"

using namespace dicke;

TEST(SpectralD2, DifferentiatesPeriodicModes) {
  const int n = 64;
  const double len = 10.0;
  const Eigen::MatrixXd d = spectral_d2(n, len);
  Eigen::VectorXd f(n), ref(n);
  const double k = 2.0 * kPi * 3 / len;
  for (int i = 0; i < n; ++i) {
    const double x = len * i / n;
    f[i] = std::sin(k * x);
    ref[i] = -k * k * f[i];
  }
  EXPECT_LT((d * f - ref).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(spectral_d2(7, 1.0), std::invalid_argument);
}

TEST(Oscillator, OperatorPositive) {
  const auto m = detail::oscillator_matrices(-1.5, 128, 9.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.h, Eigen::EigenvaluesOnly);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Oscillator, QuadratureFormDeepInRegime) {
  const auto s = solve_oscillator(-2.0);
  EXPECT_NEAR(s.mu0_tilde / mu0_integral(-2.0).quadrature, 1.0, 0.05);
  EXPECT_NEAR(s.y_variance / std::sqrt(2.0), 1.0, 0.10);
  EXPECT_TRUE(s.converged);
  EXPECT_LT(s.refined_change, 0.01);
}

TEST(Oscillator, SemiclassicalTails) {
  for (double eta : {0.0, -1.0}) {
    const auto t = oscillator_tails(solve_oscillator(eta));
    EXPECT_NEAR(t.mu.exponent, -4.0 / 3.0, 0.15) << eta;
    EXPECT_NEAR(t.y2.exponent, 4.0 / 3.0, 0.15) << eta;
    EXPECT_NEAR(t.q2.exponent, 2.0 / 3.0, 0.15) << eta;
  }
}

TEST(Oscillator, LevelsDescending) {
  const auto s = solve_oscillator(-0.5);
  for (std::size_t k = 1; k < s.mu_tilde.size(); ++k) EXPECT_LT(s.mu_tilde[k], s.mu_tilde[k - 1]);
}

TEST(Oscillator, GridChecks) {
  EXPECT_THROW(solve_oscillator(-9.0, {256, 5.0}), std::invalid_argument);
  EXPECT_THROW(solve_oscillator(NAN), std::domain_error);
  // Far too coarse a grid fails the refinement test.
  EXPECT_THROW(solve_oscillator(-4.0, {16, 0.0}), NumericalError);
}
