// Squeezing parameter of the odd-N squeezed-decay model across zeta, next to
// the large-N estimate. Prints CSV to stdout.

#include <cmath>
#include <cstdio>

#include "dicke/dicke.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 1001;
  std::printf("zeta,xi2_numeric,xi2_analytic,purity\n");
  for (int k = 0; k <= 30; ++k) {
    const double zeta = std::pow(10.0, -3.0 + 3.0 * k / 30);
    const auto rec = dicke::observables(dicke::solve_steady_state(dicke::ModelParams::sdm(n, zeta)));
    const double est = n % 2 ? dicke::analytic::sdm_odd(n, zeta).xi2 : dicke::analytic::sdm_even(n, zeta).xi2;
    std::printf("%.6e,%.6e,%.6e,%.6e\n", zeta, rec.xi2, est, rec.purity);
  }
  const auto opt = dicke::analytic::sdm_optimum(n);
  std::fprintf(stderr, "predicted optimum: zeta N = %.4f, xi2 = %.4e\n", opt.zeta_min_n, opt.xi2_min);
}
