#include <gtest/gtest.h>

#include "dicke/analytic.hpp"
#include "dicke/steady_state.hpp"

using namespace dicke;
using namespace dicke::analytic;

namespace {

// Golden-section minimum of f on [a, b].
template <class F>
std::pair<double, double> golden_min(F f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) < f(d))
      b = d;
    else
      a = c;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

TEST(EtaConversion, RoundTripAndDefinition) {
  for (int n : {100, 1000, 10000})
    for (double eta : {-3.0, -0.5, 0.0}) {
      const double u = upsilon_from_eta(n, eta);
      EXPECT_NEAR(u - 1.0, std::pow(2.0 * n, -2.0 / 3.0) * 2.0 * eta, 1e-15);
      EXPECT_NEAR(eta_from_upsilon(n, u), eta, 1e-12);
    }
}

TEST(SdmLinearized, Values) {
  const auto c = sdm_linearized(1.0);
  EXPECT_DOUBLE_EQ(c.x_var, 0.5);
  EXPECT_DOUBLE_EQ(c.p_var, 0.5);
  EXPECT_DOUBLE_EQ(c.xi2, 1.0);
  EXPECT_DOUBLE_EQ(sdm_linearized(0.1).x_var, 0.05);
  EXPECT_FALSE(sdm_linearized(0.0).validity.valid);
  EXPECT_FALSE(sdm_linearized(1e-4, 1000).validity.valid);
  EXPECT_TRUE(sdm_linearized(0.01, 1000).validity.valid);
}

TEST(SdmEven, Limits) {
  const int n = 1000;
  EXPECT_NEAR(sdm_even(n, 1e-9).xi2, 2.0 / n, 1e-9);
  const auto big = sdm_even(n, 0.9);
  EXPECT_NEAR(big.sz, -0.5 * n, 1e-3 * n);
  EXPECT_NEAR(big.xi2, 0.9, 1e-3);
  // Regime consistency with the linearized result: the ratio is I0/I1 ~ 1 + 1/(2 zeta N),
  // which is 1.0102 at zeta N = 50 and drops below 1.01 just past it.
  EXPECT_NEAR(sdm_even(n, 0.05).xi2 / sdm_linearized(0.05).xi2, 1.0 + 1.0 / 100.0, 2e-4);
  for (double x : {51.0, 80.0, 200.0}) EXPECT_LT(sdm_even(n, x / n).xi2 / sdm_linearized(x / n).xi2 - 1.0, 0.01);
}

TEST(SdmEven, MatchesDarkStateNumerics) {
  const int n = 1000;
  const double z = 0.005;
  const auto num = observables(solve_steady_state(ModelParams::sdm(n, z)), false);
  const auto a = sdm_even(n, z);
  EXPECT_NEAR(num.sz / a.sz, 1.0, 0.01);
  EXPECT_NEAR(num.sx2 / a.sx2, 1.0, 0.01);
  EXPECT_NEAR(num.xi2 / a.xi2, 1.0, 0.01);
}

TEST(SdmOdd, Values) {
  EXPECT_NEAR(sdm_odd(1001, 0.0).log_lambda0, 2.0 * std::log(kPi), 1e-14);
  const int n = 1001;
  const auto r = sdm_odd(n, 10.0 / n);
  EXPECT_NEAR(r.xi2_dominant / r.xi2, 1.0, 0.01);
  EXPECT_NEAR(r.xi2, r.xi2_dominant + r.xi2_bulk, 1e-15);
  EXPECT_THROW(sdm_odd(1000, 0.1), std::domain_error);
}

TEST(SdmOptimum, LambertValues) {
  const auto o = sdm_optimum(1001);
  EXPECT_NEAR(o.w, -9.05, 0.01);
  EXPECT_NEAR(o.zeta_min_n, 5.0, 0.05);
  EXPECT_TRUE(o.validity.valid);
  EXPECT_FALSE(sdm_optimum(1000).validity.valid);
}

TEST(SdmOptimum, SelfConsistentWithApproximateCurve) {
  for (int n : {101, 1001, 100001}) {
    const auto o = sdm_optimum(n);
    EXPECT_NEAR(sdm_odd(n, o.zeta_min).xi2_approx, o.xi2_min, 1e-12 * o.xi2_min);
    const auto [z, v] = golden_min([&](double z) { return sdm_odd(n, z).xi2_approx; }, 0.5 / n, 50.0 / n);
    EXPECT_NEAR(z / o.zeta_min, 1.0, 1e-6);
    EXPECT_NEAR(v / o.xi2_min, 1.0, 1e-12);
  }
}

TEST(SdmOptimum, ExpandedFormsConverge) {
  const auto o = sdm_optimum(1000001);
  EXPECT_NEAR(o.zeta_min_n_expanded / o.zeta_min_n, 1.0, 0.10);
  EXPECT_NEAR(o.xi2_min_expanded / o.xi2_min, 1.0, 0.10);
  // The gap shrinks with N.
  const auto small = sdm_optimum(1001);
  EXPECT_LT(std::abs(o.zeta_min_n_expanded / o.zeta_min_n - 1.0),
            std::abs(small.zeta_min_n_expanded / small.zeta_min_n - 1.0));
}

TEST(CrfMeanField, Values) {
  const auto v = crf_mean_field(1000, 0.6);
  EXPECT_DOUBLE_EQ(v.sx, 0.0);
  EXPECT_NEAR(v.sy, 300.0, 1e-12);
  EXPECT_NEAR(v.sz, -400.0, 1e-12);
  EXPECT_NEAR(crf_mean_field(10, 1.0).sz, 0.0, 1e-15);
  EXPECT_THROW(crf_mean_field(10, 1.5), std::domain_error);
}

TEST(CrfAbove, LimitsAndContinuity) {
  const int n = 1000;
  EXPECT_NEAR(crf_above_threshold_sy(n, 1.0), 0.5 * n, 1e-9);
  EXPECT_NEAR(crf_above_threshold_sy(n, 1.0 + 1e-10) / crf_mean_field(n, 1.0).sy, 1.0, 1e-4);
  EXPECT_NEAR(crf_above_threshold_sy(n, 1e4) / (n / 3e4), 1.0, 1e-6);
  EXPECT_THROW(crf_above_threshold(n, 0.9), std::domain_error);
}

TEST(CrfAbove, ClassicalMomentsMatchClosedForm) {
  for (double u : {1.2, 2.0, 5.0}) {
    const auto r = crf_above_threshold(1000, u);
    EXPECT_NEAR(r.classical.sy / r.sy, 1.0, 1e-6) << u;
    EXPECT_NEAR(r.classical.sx, 0.0, 1e-8);
    EXPECT_NEAR(r.classical.sz, 0.0, 1e-6);
  }
}

TEST(CrfBelow, Values) {
  EXPECT_DOUBLE_EQ(crf_below_threshold(0.0).xi2, 1.0);
  EXPECT_NEAR(crf_below_threshold(0.8).xi2, 0.6, 1e-15);
  EXPECT_FALSE(crf_below_threshold(1.0).validity.valid);
  EXPECT_FALSE(crf_below_threshold(0.999, 1000).validity.valid);
  EXPECT_TRUE(crf_below_threshold(0.9, 1000).validity.valid);
}

TEST(CrfCritical, GammaFormAtZeroEta) {
  const int n = 1000;
  const auto c = crf_critical(n, 0.0);
  const double ratio = std::cbrt(6.0) * std::tgamma(0.5) / std::tgamma(1.0 / 6.0);
  EXPECT_NEAR(c.sz_uniform, std::pow(0.25 * n, 2.0 / 3.0) * ratio, 1e-8 * c.sz_uniform);
  EXPECT_FALSE(c.validity.valid);
  EXPECT_THROW(crf_critical(n, 0.1), std::domain_error);
}

TEST(CrfCritical, PureLimitDeepBelow) {
  const int n = 1000;
  const double eta = -12.0;
  EXPECT_NEAR(crf_sx2_saddle(n, eta) / (std::pow(0.25 * n, 2.0 / 3.0) * std::sqrt(12.0)), 1.0, 1e-12);
  EXPECT_TRUE(crf_critical(n, eta).validity.valid);
}

TEST(CrfOptimum, SelfConsistentWithSaddleCurve) {
  for (int n : {100, 10000, 1000000}) {
    const auto o = crf_optimum(n);
    EXPECT_NEAR(crf_xi2_saddle(n, -o.eta_min_abs), o.xi2_min, 1e-12 * o.xi2_min);
    const auto [a, v] = golden_min([&](double a) { return crf_xi2_saddle(n, -a); }, 0.3, 10.0);
    EXPECT_NEAR(a / o.eta_min_abs, 1.0, 1e-6);
    EXPECT_NEAR(v / o.xi2_min, 1.0, 1e-12);
    EXPECT_NEAR(o.delta_upsilon_min, -2.0 * o.eta_min_abs * std::pow(2.0 * n, -2.0 / 3.0), 1e-15);
  }
}

TEST(CrfOptimum, SaddleRegimeAndExpansion) {
  const auto o = crf_optimum(10000);
  EXPECT_GT(o.eta_min_abs, 1.0);
  EXPECT_TRUE(o.validity.valid);
  const auto big = crf_optimum(1000000000);
  EXPECT_LT(std::abs(big.xi2_min_expanded / big.xi2_min - 1.0), std::abs(o.xi2_min_expanded / o.xi2_min - 1.0));
  EXPECT_THROW(crf_optimum(5), std::domain_error);
}
