#pragma once

// Closed-form finite-size predictions for both models. Every result carries
// a validity flag: the formulas are asymptotic and their regimes are narrow.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "dicke/special.hpp"

namespace dicke::analytic {

struct Validity {
  bool valid = true;
  std::string note;
};

// Rescaled detuning of the critical region: upsilon - 1 = (2N)^{-2/3} * 2 eta.
inline double eta_from_upsilon(int n, double upsilon) {
  return 0.5 * (upsilon - 1.0) * std::pow(2.0 * n, 2.0 / 3.0);
}
inline double upsilon_from_eta(int n, double eta) { return 1.0 + 2.0 * eta * std::pow(2.0 * n, -2.0 / 3.0); }

// ---- SDM ----------------------------------------------------------------

struct SdmLinearized {
  double x_var, p_var, xi2;
  Validity validity;
};

// Strong-polarization limit: 2<x^2> = 1/(2<p^2>) = zeta. Valid while the
// p fluctuations stay small against N, i.e. zeta N >~ 1.
inline SdmLinearized sdm_linearized(double zeta, std::optional<int> n = std::nullopt) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("sdm_linearized: zeta outside [0, 1]");
  SdmLinearized r{0.5 * zeta, zeta > 0.0 ? 0.5 / zeta : INFINITY, zeta, {}};
  r.validity.note = "requires zeta*N >~ 1";
  r.validity.valid = std::isfinite(r.p_var) && (!n || zeta * *n >= 1.0);
  return r;
}

struct SdmEven {
  double sz, sx2, xi2;
  Validity validity;
};

inline SdmEven sdm_even(int n, double zeta) {
  if (n < 2) throw std::domain_error("sdm_even: N must be >= 2");
  if (!(zeta > 0.0 && zeta <= 1.0)) throw std::domain_error("sdm_even: zeta outside (0, 1]");
  const double x = zeta * n;
  const double ratio = bessel_ratio_i1_i0(x);
  SdmEven r;
  r.sz = -0.5 * n * ratio;
  r.sx2 = 0.25 * x * ratio;
  r.xi2 = zeta / ratio;
  r.validity = {n % 2 == 0, "even N; large-N phase-representation result"};
  return r;
}

struct SdmOdd {
  double log_lambda0;    // ln [pi^2 I0(zeta N)^2]
  double sz;
  double sx2;            // dominant + bulk
  double sx2_dominant;   // (zeta N / 4) I1/I0
  double sx2_bulk;       // N/(1+zeta) / lambda0
  double xi2;            // zeta I0/I1 + 4/(pi^2 I1^2), zeta set to 0 outside Bessel arguments
  double xi2_full;       // same with the 1/(1+zeta) bulk factor kept
  double xi2_dominant;
  double xi2_bulk;
  double xi2_approx;     // zeta + (8 zeta N / pi) e^{-2 zeta N}
  Validity validity;
};

inline SdmOdd sdm_odd(int n, double zeta) {
  if (n < 1 || n % 2 == 0) throw std::domain_error("sdm_odd: N must be odd");
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::domain_error("sdm_odd: zeta outside [0, 1]");
  const double x = zeta * n;
  SdmOdd r;
  r.log_lambda0 = 2.0 * std::log(kPi) + 2.0 * log_bessel_i(0, x);
  const double ratio = bessel_ratio_i1_i0(x);
  r.sz = -0.5 * n * ratio;
  r.sx2_dominant = 0.25 * x * ratio;
  r.sx2_bulk = n / (1.0 + zeta) * std::exp(-r.log_lambda0);
  r.sx2 = r.sx2_dominant + r.sx2_bulk;
  r.xi2_dominant = x > 0.0 ? zeta / ratio : INFINITY;
  r.xi2_bulk = x > 0.0 ? std::exp(std::log(4.0) - 2.0 * std::log(kPi) - 2.0 * log_bessel_i(1, x)) : INFINITY;
  r.xi2 = r.xi2_dominant + r.xi2_bulk;
  r.xi2_full = r.xi2_dominant + r.xi2_bulk / (1.0 + zeta);
  r.xi2_approx = zeta + 8.0 * x / kPi * std::exp(-2.0 * x);
  r.validity = {true, "xi2_approx requires zeta*N >~ 1"};
  return r;
}

struct SdmOptimum {
  double w;                // W_{-1}(-pi e / 8N)
  double zeta_min_n;       // exact-W form
  double zeta_min;
  double xi2_min;
  double zeta_min_n_expanded;  // log + loglog expansion
  double xi2_min_expanded;
  Validity validity;
};

inline SdmOptimum sdm_optimum(int n) {
  if (n < 2) throw std::domain_error("sdm_optimum: N must be >= 2");
  SdmOptimum r;
  r.w = lambert_w_minus1(-kPi * std::exp(1.0) / (8.0 * n));
  r.zeta_min_n = 0.5 * (1.0 - r.w);
  r.zeta_min = r.zeta_min_n / n;
  r.xi2_min = r.zeta_min * (1.0 + 1.0 / (2.0 * r.zeta_min_n - 1.0));
  const double loglog = std::log(std::log(8.0 * n / (kPi * std::exp(1.0))));
  r.zeta_min_n_expanded = 0.5 * (std::log(8.0 * n / kPi) + loglog);
  r.xi2_min_expanded = (std::log(8.0 * n * std::exp(1.0) / kPi) + loglog) / (2.0 * n);
  r.validity = {n % 2 == 1 && n >= 11, "odd N >= 11"};
  return r;
}

// ---- CRF ----------------------------------------------------------------

struct BlochVector {
  double sx, sy, sz;
};

inline BlochVector crf_mean_field(int n, double upsilon) {
  if (!(upsilon >= 0.0 && upsilon <= 1.0)) throw std::domain_error("crf_mean_field: upsilon outside [0, 1]");
  return {0.0, 0.5 * n * upsilon, -0.5 * n * std::sqrt(1.0 - upsilon * upsilon)};
}

struct ClassicalMoments {
  double sx, sy, sz, sx2, sy2, sz2;
};

struct CrfAbove {
  double sy;  // closed form
  ClassicalMoments classical;
  Validity validity;
};

// Moments of rho_cl ∝ 1/|sin(theta) e^{-i phi} + i upsilon|^2 under the
// measure sin(theta) dtheta dphi, with S -> (N/2) n(theta, phi).
inline ClassicalMoments classical_moments(int n, double upsilon) {
  using GL = boost::math::quadrature::gauss<double, 40>;
  constexpr int kPhi = 256;
  constexpr int kSlices = 8;
  double acc[7] = {0, 0, 0, 0, 0, 0, 0};
  for (int ip = 0; ip < kPhi; ++ip) {
    const double phi = 2.0 * kPi * (ip + 0.5) / kPhi;
    const double cp = std::cos(phi), sp = std::sin(phi);
    for (int sl = 0; sl < kSlices; ++sl) {
      const double a = kPi * sl / kSlices, b = kPi * (sl + 1) / kSlices;
      for (int k = 0; k < 7; ++k) {
        acc[k] += GL::integrate(
            [&](double th) {
              const double st = std::sin(th), ct = std::cos(th);
              const double w = st / (st * st + upsilon * upsilon - 2.0 * upsilon * st * sp);
              const double vx = st * cp, vy = st * sp, vz = ct;
              const double f[7] = {1.0, vx, vy, vz, vx * vx, vy * vy, vz * vz};
              return w * f[k];
            },
            a, b);
      }
    }
  }
  const double h = 0.5 * n;
  return {h * acc[1] / acc[0],     h * acc[2] / acc[0],     h * acc[3] / acc[0],
          h * h * acc[4] / acc[0], h * h * acc[5] / acc[0], h * h * acc[6] / acc[0]};
}

inline double crf_above_threshold_sy(int n, double upsilon) {
  if (!(upsilon >= 1.0)) throw std::domain_error("crf_above_threshold: upsilon must be >= 1");
  const double u2 = upsilon * upsilon;
  return 0.5 * n / upsilon * (u2 - std::sqrt(u2 - 1.0) / std::asin(1.0 / upsilon));
}

inline CrfAbove crf_above_threshold(int n, double upsilon, bool with_moments = true) {
  if (!(upsilon > 1.0)) throw std::domain_error("crf_above_threshold: upsilon must be > 1");
  CrfAbove r;
  r.sy = crf_above_threshold_sy(n, upsilon);
  if (with_moments) r.classical = classical_moments(n, upsilon);
  r.validity = {true, "leading order in 1/N"};
  return r;
}

struct CrfBelow {
  double x_var, p_var, xi2;
  Validity validity;
};

// 2<x^2> = 1/(2<p^2>) = cos(alpha) = sqrt(1 - upsilon^2). With N supplied,
// valid only outside the critical window (eta <= -1).
inline CrfBelow crf_below_threshold(double upsilon, std::optional<int> n = std::nullopt) {
  if (!(upsilon >= 0.0 && upsilon <= 1.0)) throw std::domain_error("crf_below_threshold: upsilon outside [0, 1]");
  const double c = std::sqrt(1.0 - upsilon * upsilon);
  CrfBelow r{0.5 * c, c > 0.0 ? 0.5 / c : INFINITY, c, {}};
  r.validity.note = "requires eta <= -1 (outside the critical window)";
  r.validity.valid = std::isfinite(r.p_var) && (!n || eta_from_upsilon(*n, upsilon) <= -1.0);
  return r;
}

struct CrfCritical {
  double eta, upsilon;
  Mu0Estimate mu0;
  double sx2_saddle;      // (N/4)^{2/3} sqrt|eta| (1 + (2N/3pi) e^{-(8/3)|eta|^{3/2}})
  double xi2_saddle;      // sx2_saddle / (N/4)
  double sz_uniform;      // magnitude; the state sits on the southern side
  double sy_deficit_uniform;  // N/2 - <Sy>
  double sx2_uniform;
  double xi2_uniform;     // N Var / (Sz^2 + Sy^2) from the uniform forms
  Validity validity;      // of the saddle-point variants
};

inline double crf_sx2_saddle(int n, double eta) {
  const double a = std::abs(eta);
  return std::pow(0.25 * n, 2.0 / 3.0) * std::sqrt(a) *
         (1.0 + 2.0 * n / (3.0 * kPi) * std::exp(-8.0 / 3.0 * std::pow(a, 1.5)));
}

inline double crf_xi2_saddle(int n, double eta) { return crf_sx2_saddle(n, eta) / (0.25 * n); }

inline CrfCritical crf_critical(int n, double eta, const QuadratureSpec& spec = {}) {
  if (!(eta <= 0.0)) throw std::domain_error("crf_critical: eta must be <= 0");
  if (n < 1) throw std::domain_error("crf_critical: N must be positive");
  CrfCritical r;
  r.eta = eta;
  r.upsilon = upsilon_from_eta(n, eta);
  r.mu0 = mu0_integral(eta, spec);
  r.sx2_saddle = crf_sx2_saddle(n, eta);
  r.xi2_saddle = r.sx2_saddle / (0.25 * n);

  const double pref = std::pow(0.25 * n, 2.0 / 3.0);
  const ScaledIntegral j0 = sextic_gaussian_integral_scaled(0, eta, spec);
  const ScaledIntegral j2 = sextic_gaussian_integral_scaled(2, eta, spec);
  const ScaledIntegral js = sextic_subtracted_integral_scaled(eta, spec);
  const double inv_j0 = std::exp(-j0.log());
  r.sz_uniform = pref * std::exp(j2.log() - j0.log());
  r.sy_deficit_uniform = -(std::cbrt(2.0 * n) * eta / 2.0 - std::sqrt(2.0 / kPi) * pref * inv_j0);
  const double sub_ratio = js.value * std::exp(js.log_scale - j0.log());
  r.sx2_uniform = pref * (0.5 * sub_ratio + (n / 3.0) / std::sqrt(2.0 * kPi) * inv_j0);
  const double sy = 0.5 * n - r.sy_deficit_uniform;
  r.xi2_uniform = n * r.sx2_uniform / (r.sz_uniform * r.sz_uniform + sy * sy);
  r.validity = {eta <= -1.0, "saddle-point forms need eta <~ -1; uniform forms hold down to eta = 0"};
  return r;
}

struct CrfOptimum {
  double w;                 // W_{-1}(-pi e^{1/3} / 2N)
  double eta_min_abs;
  double xi2_min;
  double eta_min_abs_expanded;
  double xi2_min_expanded;
  double delta_upsilon_min;  // -(2N)^{-2/3} 2 |eta|_min
  Validity validity;
};

inline CrfOptimum crf_optimum(int n) {
  if (n < 10) throw std::domain_error("crf_optimum: N must be >= 10");
  CrfOptimum r;
  r.w = lambert_w_minus1(-kPi * std::exp(1.0 / 3.0) / (2.0 * n));
  const double t = 0.125 - 0.375 * r.w;  // |eta|^{3/2}
  r.eta_min_abs = std::pow(t, 2.0 / 3.0);
  r.xi2_min = std::pow(0.25 * n, -1.0 / 3.0) * std::sqrt(r.eta_min_abs) * (8.0 * t / (8.0 * t - 1.0));
  const double lg = std::log(2.0 * n / kPi);
  r.eta_min_abs_expanded = std::pow(0.375 * lg, 2.0 / 3.0);
  r.xi2_min_expanded = std::cbrt(1.5 / n * lg);
  r.delta_upsilon_min = upsilon_from_eta(n, -r.eta_min_abs) - 1.0;
  r.validity = {r.eta_min_abs >= 1.0, "|eta|_min >= 1 keeps the optimum in the saddle regime"};
  return r;
}

}  // namespace dicke::analytic
