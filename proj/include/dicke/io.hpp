#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dicke/density.hpp"

namespace dicke {

// Dense matrix as row,col,re,im lines, full precision.
inline void write_density_csv(const DensityMatrix& rho, std::ostream& os) {
  os << "row,col,re,im\n";
  char buf[96];
  for (int j = 0; j < rho.matrix.cols(); ++j)
    for (int i = 0; i < rho.matrix.rows(); ++i) {
      const cplx z = rho.matrix(i, j);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17e,%.17e\n", i, j, z.real(), z.imag());
      os << buf;
    }
}

inline MatrixC read_density_csv(std::istream& is, int dim) {
  MatrixC m = MatrixC::Zero(dim, dim);
  std::string line;
  if (!std::getline(is, line) || line != "row,col,re,im") throw std::invalid_argument("density csv: bad header");
  int seen = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    int i, j;
    double re, im;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &i, &j, &re, &im) != 4)
      throw std::invalid_argument("density csv: malformed line '" + line + "'");
    if (i < 0 || j < 0 || i >= dim || j >= dim) throw std::out_of_range("density csv: index outside matrix");
    m(i, j) = {re, im};
    ++seen;
  }
  if (seen != dim * dim) throw std::invalid_argument("density csv: expected " + std::to_string(dim * dim) + " entries");
  return m;
}

inline nlohmann::ordered_json density_metadata(const DensityMatrix& rho, Model model, double parameter) {
  return {{"model", to_string(model)},
          {"N", rho.basis.n_particles()},
          {"parameter", parameter},
          {"construction", to_string(rho.construction)},
          {"residual", rho.residual},
          {"log_condition", rho.log_condition},
          {"log_raw_trace", rho.log_raw_trace}};
}

// Writes <prefix>.csv and <prefix>.json.
inline void write_density(const DensityMatrix& rho, Model model, double parameter, const std::string& prefix) {
  std::ofstream csv(prefix + ".csv"), meta(prefix + ".json");
  if (!csv || !meta) throw std::runtime_error("cannot open output files for prefix '" + prefix + "'");
  write_density_csv(rho, csv);
  meta << density_metadata(rho, model, parameter).dump(2) << "\n";
}

}  // namespace dicke
