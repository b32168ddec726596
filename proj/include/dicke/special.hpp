#pragma once

// Scalar special functions used by the analytic finite-size formulas:
// modified Bessel I0/I1 (with exponentially scaled forms), the lower real
// branch of Lambert W, and semi-infinite quadratures of the form
// int_0^inf exp(phi(v)) v^k dv.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "dicke/common.hpp"

namespace dicke {

namespace detail {

// e^{-x} I_nu(x) from the large-argument expansion, used for x > 700 where
// the unscaled value is about to overflow.
inline double scaled_bessel_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

inline constexpr double kBesselSwitch = 700.0;

inline void check_bessel_args(int order, double x) {
  if (order != 0 && order != 1)
    throw std::invalid_argument("bessel_i: only orders 0 and 1 are provided");
  if (!(x >= 0.0)) throw std::domain_error("bessel_i: argument must be >= 0");
  if (x > 1e8) throw std::domain_error("bessel_i: argument above 1e8");
}

}  // namespace detail

// Modified Bessel function of the first kind, order 0 or 1. With scaled set,
// returns e^{-x} I_k(x), which never overflows. The unscaled form returns
// +inf once I_k(x) leaves double range.
inline double bessel_i(int order, double x, bool scaled = false) {
  detail::check_bessel_args(order, x);
  if (x <= detail::kBesselSwitch) {
    const double v = boost::math::cyl_bessel_i(order, x);
    return scaled ? v * std::exp(-x) : v;
  }
  const double s = detail::scaled_bessel_asymptotic(order, x);
  if (scaled) return s;
  const double log_v = std::log(s) + x;
  return log_v > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(log_v);
}

// ln I_k(x); -inf for I_1(0).
inline double log_bessel_i(int order, double x) {
  detail::check_bessel_args(order, x);
  return std::log(bessel_i(order, x, true)) + x;
}

// I_1(x) / I_0(x), in [0, 1).
inline double bessel_ratio_i1_i0(double x) { return bessel_i(1, x, true) / bessel_i(0, x, true); }

struct ScaledBessel {
  int order = 0;
  bool scaled = true;
  double operator()(double x) const { return bessel_i(order, x, scaled); }
};

// Lower real branch W_{-1}(x) for x in [-1/e, 0): the solution of w e^w = x
// with w <= -1. Seeded from the branch-point series near -1/e and from the
// logarithmic iteration elsewhere, then polished with Halley steps.
inline double lambert_w_minus1(double x) {
  constexpr double kInvE = 0.36787944117144232159552377016146;
  if (!(x < 0.0)) throw std::domain_error("lambert_w_minus1: argument must be negative");
  if (x < -kInvE - 1e-15) throw std::domain_error("lambert_w_minus1: argument below -1/e");
  const double near = 2.0 * (std::exp(1.0) * x + 1.0);
  if (near <= 1e-30) return -1.0;

  double w;
  if (near < 0.09) {
    const double p = -std::sqrt(near);
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-x);
    w = l1 - std::log(-l1);
    w = l1 - std::log(-w);
  }
  for (int it = 0; it < 30; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    double next = w - step;
    if (next > -1.0) next = 0.5 * (w - 1.0);
    const bool done = std::abs(next - w) <= 4e-16 * std::abs(w);
    w = next;
    if (done) break;
  }
  return w;
}

struct QuadratureSpec {
  double rel_tol = 1e-10;
  // Integrand is cut off where it drops below this fraction of its peak.
  double cutoff_ratio = 1e-18;
  unsigned max_depth = 20;
};

// Value of an integral kept as value * exp(log_scale) so huge results stay
// representable.
struct ScaledIntegral {
  double value = 0.0;
  double abs_error = 0.0;
  double log_scale = 0.0;

  double linear() const {
    const double lv = log();
    return lv > 709.0 ? std::numeric_limits<double>::infinity() : value * std::exp(log_scale);
  }
  double log() const { return std::log(value) + log_scale; }
};

namespace detail {

// int_0^inf g(v) dv where g(v) = exp(-log_peak) * (true integrand) is O(1)
// at its maximum v_peak and decays monotonically beyond it.
template <class F>
ScaledIntegral peak_scaled_integral(F g, double v_peak, double log_peak, const QuadratureSpec& spec) {
  double v_cut = std::max(2.0 * v_peak, 1.0);
  while (std::abs(g(v_cut)) > spec.cutoff_ratio) {
    v_cut *= 1.25;
    if (v_cut > 1e6) throw QuadratureError("quadrature: integrand does not decay", 0.0, 0.0);
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err_lo = 0.0, err_hi = 0.0, l1_lo = 0.0, l1_hi = 0.0;
  double lo = 0.0;
  if (v_peak > 0.0) lo = GK::integrate(g, 0.0, v_peak, spec.max_depth, spec.rel_tol * 0.5, &err_lo, &l1_lo);
  const double hi = GK::integrate(g, v_peak, v_cut, spec.max_depth, spec.rel_tol * 0.5, &err_hi, &l1_hi);
  ScaledIntegral out{lo + hi, err_lo + err_hi, log_peak};
  const double scale = std::max(std::abs(out.value), 1e-300);
  if (out.abs_error > spec.rel_tol * scale)
    throw QuadratureError("quadrature: tolerance not reached", out.value * std::exp(log_peak),
                          out.abs_error * std::exp(log_peak));
  return out;
}

// phi(v) = -v^6/6 - 2 eta v^2 and its maximum over v >= 0.
inline double sextic_phase(double v, double eta) {
  const double v2 = v * v;
  return -v2 * v2 * v2 / 6.0 - 2.0 * eta * v2;
}

inline double sextic_peak(double eta) { return eta < 0.0 ? std::pow(-4.0 * eta, 0.25) : 0.0; }

}  // namespace detail

// int_0^inf exp(-v^6/6 - 2 eta v^2) v^k dv, k in {0, 2}, in scaled form.
inline ScaledIntegral sextic_gaussian_integral_scaled(int k, double eta, const QuadratureSpec& spec = {}) {
  if (k != 0 && k != 2) throw std::invalid_argument("sextic_gaussian_integral: k must be 0 or 2");
  if (!std::isfinite(eta)) throw std::domain_error("sextic_gaussian_integral: eta must be finite");
  const double vp = detail::sextic_peak(eta);
  const double log_peak = detail::sextic_phase(vp, eta);
  auto g = [=](double v) {
    const double w = std::exp(detail::sextic_phase(v, eta) - log_peak);
    return k == 0 ? w : w * v * v;
  };
  // v^2 moves the peak of the k=2 integrand outward; the cutoff search
  // starts at 2 * vp so it still lands past it.
  return detail::peak_scaled_integral(g, vp, log_peak, spec);
}

inline double sextic_gaussian_integral(int k, double eta, const QuadratureSpec& spec = {}) {
  return sextic_gaussian_integral_scaled(k, eta, spec).linear();
}

// int_0^inf exp(-v^6/6) (exp(-2 eta v^2) - 1) v^2 dv, without the
// cancellation of subtracting two sextic integrals at small eta.
inline ScaledIntegral sextic_subtracted_integral_scaled(double eta, const QuadratureSpec& spec = {}) {
  if (!std::isfinite(eta)) throw std::domain_error("sextic_subtracted_integral: eta must be finite");
  const double vp = detail::sextic_peak(eta);
  const double log_peak = std::max(detail::sextic_phase(vp, eta), 0.0);
  auto g = [=](double v) {
    const double v2 = v * v;
    const double x = -2.0 * eta * v2;
    const double base = -v2 * v2 * v2 / 6.0;
    const double diff = std::abs(x) < 1.0 ? std::exp(base - log_peak) * std::expm1(x)
                                          : std::exp(base + x - log_peak) - std::exp(base - log_peak);
    return diff * v2;
  };
  return detail::peak_scaled_integral(g, std::max(vp, 1.0), log_peak, spec);
}

struct Mu0Estimate {
  double log_quadrature = 0.0;  // ln [int_0^inf exp(-2 eta q - 2 q^3/3) dq]^2
  double log_saddle = 0.0;      // ln [pi exp(8|eta|^{3/2}/3) / (2 sqrt|eta|)]
  double quadrature = 0.0;      // linear forms; +inf past double range
  double saddle = 0.0;
  bool saddle_regime = false;   // eta <~ -1, where the saddle form is trustworthy
};

// Approximate rescaled lowest eigenvalue inverse of the critical anharmonic
// oscillator, in both the exact-quadrature and saddle-point forms.
inline Mu0Estimate mu0_integral(double eta, const QuadratureSpec& spec = {}) {
  if (!(eta <= 0.0)) throw std::domain_error("mu0_integral: eta must be <= 0");
  const double a = -eta;
  const double qp = std::sqrt(a);
  auto phase = [=](double q) { return -2.0 * eta * q - 2.0 * q * q * q / 3.0; };
  const double log_peak = phase(qp);
  auto g = [=](double q) { return std::exp(phase(q) - log_peak); };
  const ScaledIntegral one = detail::peak_scaled_integral(g, qp, log_peak, spec);

  Mu0Estimate out;
  out.log_quadrature = 2.0 * one.log();
  out.log_saddle = a > 0.0 ? std::log(kPi / 2.0) + 8.0 * std::pow(a, 1.5) / 3.0 - 0.5 * std::log(a)
                           : std::numeric_limits<double>::infinity();
  auto lin = [](double lv) { return lv > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(lv); };
  out.quadrature = lin(out.log_quadrature);
  out.saddle = lin(out.log_saddle);
  out.saddle_regime = eta <= -1.0;
  return out;
}

}  // namespace dicke
