#include <gtest/gtest.h>

#include <random>

#include "dicke/coherent.hpp"
#include "dicke/steady_state.hpp"

using namespace dicke;

TEST(CoherentState, BlochVectorExpectations) {
  for (int n : {1, 4, 25, 300}) {
    DickeBasis b(n);
    for (double theta : {0.0, 0.3, 1.2, kPi / 2, 2.9, kPi})
      for (double phi : {0.0, 0.7, 3.0, 5.5}) {
        const VectorC psi = coherent_state(b, theta, phi).amplitudes;
        EXPECT_NEAR(psi.norm(), 1.0, 1e-13);
        const double s = 0.5 * n;
        EXPECT_NEAR(expectation(banded::sx(b), psi).real(), s * std::sin(theta) * std::cos(phi), 1e-10 * (s + 1));
        EXPECT_NEAR(expectation(banded::sy(b), psi).real(), s * std::sin(theta) * std::sin(phi), 1e-10 * (s + 1));
        EXPECT_NEAR(expectation(banded::sz(b), psi).real(), s * std::cos(theta), 1e-10 * (s + 1));
      }
  }
}

TEST(CoherentState, MinimumUncertainty) {
  DickeBasis b(50);
  const VectorC psi = coherent_state(b, kPi / 2, 0.0).amplitudes;
  // Transverse variance N/4 for every coherent state.
  const BandedOperator y = banded::sy(b), z = banded::sz(b);
  EXPECT_NEAR(expectation(y * y, psi).real(), 12.5, 1e-9);
  EXPECT_NEAR(expectation(z * z, psi).real(), 12.5, 1e-9);
}

TEST(CoherentState, RejectsBadAngles) {
  DickeBasis b(3);
  EXPECT_THROW(coherent_state(b, -0.1, 0.0), std::domain_error);
  EXPECT_THROW(coherent_state(b, 0.1, 7.0), std::domain_error);
}

TEST(Husimi, IntegralIsInverseDimension) {
  std::mt19937 rng(7);
  std::normal_distribution<double> g;
  for (int n : {1, 5, 20}) {
    DickeBasis b(n);
    MatrixC a(b.dim(), b.dim());
    for (int i = 0; i < a.size(); ++i) a.data()[i] = cplx(g(rng), g(rng));
    DensityMatrix rho(b, a * a.adjoint());
    rho.normalize();
    const HusimiGrid q = husimi(rho, {200, 160});
    EXPECT_NEAR(q.sphere_integral(), 1.0 / (n + 1), 2e-4 / (n + 1)) << "N=" << n;
  }
}

TEST(Husimi, GridMatchesPointwise) {
  const auto rho = solve_steady_state(ModelParams::crf(12, 0.8)).dense();
  const HusimiGrid q = husimi(rho, {9, 14});
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 14; ++j) EXPECT_NEAR(q.at(i, j), husimi_at(rho, q.thetas[i], q.phis[j]), 1e-12);
}

TEST(Husimi, CoherentStatePeaksAtItsDirection) {
  DickeBasis b(40);
  const double theta = (37 + 0.5) * kPi / 60, phi = 2.0 * kPi * 31 / 80;
  const auto rho = DensityMatrix::pure(b, coherent_state(b, theta, phi).amplitudes, Construction::projector);
  const HusimiGrid q = husimi(rho, {60, 80});
  const auto [it, ip] = q.argmax();
  EXPECT_EQ(it, 37);
  EXPECT_EQ(ip, 31);
  EXPECT_NEAR(q.max_value(), 1.0 / (4.0 * kPi), 1e-12);
}

TEST(Husimi, RejectsNonHermitian) {
  DickeBasis b(2);
  MatrixC m = MatrixC::Identity(3, 3) / 3.0;
  m(0, 1) = 0.2;
  EXPECT_THROW(husimi(DensityMatrix(b, m)), std::invalid_argument);
}
