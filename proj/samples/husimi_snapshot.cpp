// Husimi Q of the driven-superradiance steady state, below and above
// threshold, as two CSV files.

#include <cstdio>
#include <fstream>
#include <string>

#include "dicke/dicke.hpp"

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 200;
  for (double ups : {0.75, 2.0}) {
    const auto rho = dicke::solve_steady_state(dicke::ModelParams::crf(n, ups)).dense();
    const auto q = dicke::husimi(rho, {100, 200});
    const std::string path = "husimi_crf_" + std::to_string(n) + "_" + (ups < 1 ? "below" : "above") + ".csv";
    std::ofstream os(path);
    q.write_csv(os);
    std::printf("%s: upsilon=%.2f max/median=%.3e\n", path.c_str(), ups, q.max_value() / q.median_value());
  }
}
