// dicke: batch runner for collective-spin steady states.
//
//   dicke sweep --model sdm --n 1000,1001 --param-grid zeta=log:1e-4:1:41 --analytics sdm_even,sdm_odd
//   dicke scan-optimum --model sdm --n 101,1001 --bracket 1e-3,1
//   dicke fit --in optima.csv --family power
//   dicke husimi --model crf --n 200 --param 2 --out q.csv
//   dicke verify --n-max 12 --points 20

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dicke/dicke.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);)
    if (!p.empty()) out.push_back(p);
  return out;
}

std::vector<int> parse_n_list(const std::vector<std::string>& raw) {
  std::vector<int> out;
  for (const auto& r : raw)
    for (const auto& p : split(r)) out.push_back(std::stoi(p));
  return out;
}

// Writes to path, or stdout when path is empty or "-".
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  f(os);
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

int run_sweep_cmd(const std::string& config_path, const std::string& model, const std::vector<std::string>& n_raw,
                  const std::string& grid, const std::string& analytics, const std::string& obs,
                  const std::string& out, const std::string& format, double tolerance, int threads) {
  dicke::SweepConfig c;
  if (!config_path.empty()) c = dicke::load_sweep_config(config_path);
  if (!model.empty()) {
    c.model = dicke::parse_model(model);
    if (config_path.empty()) c.grid.variable = c.model == dicke::Model::sdm ? "zeta" : "upsilon";
  }
  if (!n_raw.empty()) c.n_values = parse_n_list(n_raw);
  if (!grid.empty()) c.grid = dicke::GridSpec::parse(grid);
  if (!analytics.empty()) c.analytics = split(analytics);
  if (!obs.empty()) c.observables = split(obs);
  if (!out.empty()) c.out = out;
  if (!format.empty()) c.format = format;
  if (tolerance > 0.0) c.tolerance = tolerance;
  if (threads >= 0) c.threads = threads;
  c.validate();

  const dicke::SweepResult res = dicke::run_sweep(c);
  with_output(c.out, [&](std::ostream& os) {
    if (c.format == "csv")
      dicke::write_sweep_csv(res, os);
    else
      os << dicke::sweep_to_json(res).dump(2) << "\n";
  });
  int failed = 0;
  for (const auto& p : res.points)
    if (!p.ok) {
      ++failed;
      std::cerr << "point N=" << p.n << " grid[" << p.grid_index << "]=" << p.grid_value << ": " << p.error << "\n";
    }
  if (failed) std::cerr << failed << " of " << res.points.size() << " points failed\n";
  return failed ? 1 : 0;
}

int run_scan_cmd(const std::string& model, const std::vector<std::string>& n_raw, const std::string& bracket,
                 int coarse, double tol, const std::string& out) {
  const dicke::Model m = dicke::parse_model(model);
  const auto b = split(bracket);
  if (b.size() != 2) throw std::invalid_argument("--bracket expects lo,hi");
  const double lo = std::stod(b[0]), hi = std::stod(b[1]);
  int failed = 0;
  with_output(out, [&](std::ostream& os) {
    os << "model,n," << (m == dicke::Model::sdm ? "zeta_min" : "minus_delta_upsilon_min")
       << ",xi2_min,analytic_param_min,analytic_xi2_min,evaluations\n";
    for (int n : parse_n_list(n_raw)) {
      try {
        const auto s = dicke::scan_optimum(m, n, lo, hi, coarse, tol);
        double ap = NAN, ax = NAN;
        if (m == dicke::Model::sdm && n >= 2) {
          const auto a = dicke::analytic::sdm_optimum(n);
          ap = a.zeta_min;
          ax = a.xi2_min;
        } else if (m == dicke::Model::crf && n >= 10) {
          const auto a = dicke::analytic::crf_optimum(n);
          ap = -a.delta_upsilon_min;
          ax = a.xi2_min;
        }
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%.12e,%.12e,%.12e,%.12e,%d\n", dicke::to_string(m).c_str(), n,
                      s.param_min, s.xi2_min, ap, ax, s.evaluations);
        os << buf;
      } catch (const std::exception& e) {
        ++failed;
        std::cerr << "N=" << n << ": " << e.what() << "\n";
      }
    }
  });
  return failed ? 1 : 0;
}

int run_fit_cmd(const std::string& in, const std::string& family, const std::string& n_col,
                const std::string& y_col) {
  std::ifstream is(in);
  if (!is) throw std::runtime_error("cannot open input file '" + in + "'");
  const auto rows = dicke::read_csv(is);
  if (rows.empty()) throw std::invalid_argument("fit: '" + in + "' is empty");
  auto column = [&](const std::string& name) {
    for (std::size_t k = 0; k < rows[0].size(); ++k)
      if (rows[0][k] == name) return k;
    throw std::invalid_argument("fit: column '" + name + "' missing in '" + in + "'");
  };
  const std::size_t cn = column(n_col), cy = column(y_col);
  std::vector<dicke::ScalingPoint> pts;
  for (std::size_t r = 1; r < rows.size(); ++r) pts.push_back({std::stod(rows[r][cn]), std::stod(rows[r][cy])});
  const auto f = dicke::fit_scaling(pts, family);
  std::printf("family,%s\n", f.family.c_str());
  for (const auto& [k, v] : f.coefficients) std::printf("%s,%.12e\n", k.c_str(), v);
  std::printf("residual,%.12e\nn_min,%g\nn_max,%g\n", f.residual, f.n_min, f.n_max);
  return 0;
}

int run_husimi_cmd(const std::string& model, int n, double param, int n_theta, int n_phi, const std::string& out,
                   const std::string& state_out) {
  const auto p = dicke::ModelParams::make(dicke::parse_model(model), n, param);
  const dicke::DensityMatrix rho = dicke::solve_steady_state(p).dense();
  if (!state_out.empty()) dicke::write_density(rho, p.model(), param, state_out);
  const auto g = dicke::husimi(rho, {n_theta, n_phi});
  with_output(out, [&](std::ostream& os) { g.write_csv(os); });
  std::fprintf(stderr, "max/median Q = %.6e, integral = %.6e (1/(N+1) = %.6e)\n",
               g.max_value() / std::max(g.median_value(), 1e-300), g.sphere_integral(), 1.0 / (n + 1));
  return 0;
}

int run_verify_cmd(int n_min, int n_max, int points, double tol, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_zeta(-2.0, 0.0), ups(0.0, 3.0);
  int bad = 0, total = 0;
  double worst = 0.0;
  for (int n = n_min; n <= n_max; ++n)
    for (auto m : {dicke::Model::sdm, dicke::Model::crf})
      for (int k = 0; k < points; ++k) {
        const double v = m == dicke::Model::sdm ? std::pow(10.0, log_zeta(rng)) : ups(rng);
        ++total;
        try {
          const double d = dicke::oracle_discrepancy(dicke::ModelParams::make(m, n, v));
          worst = std::max(worst, d);
          if (!(d <= tol)) {
            ++bad;
            std::printf("FAIL %s N=%d param=%.6g diff=%.3e\n", dicke::to_string(m).c_str(), n, v, d);
          }
        } catch (const std::exception& e) {
          ++bad;
          std::printf("FAIL %s N=%d param=%.6g: %s\n", dicke::to_string(m).c_str(), n, v, e.what());
        }
      }
  std::printf("%d/%d points within %.1e (worst %.3e)\n", total - bad, total, tol, worst);
  return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states of collectively dissipating spin ensembles"};
  app.require_subcommand(1);

  std::string model, grid, analytics, obs, out, format, config, bracket = "1e-3,1", in, family = "power";
  std::string n_col = "n", y_col = "xi2_min", state_out;
  std::vector<std::string> n_raw;
  double tolerance = -1.0, param = 0.5;
  int threads = -1, coarse = 25, n_theta = 200, n_phi = 400, n_single = 100;
  int n_min = 2, n_max = 12, points = 20;
  unsigned seed = 20240501;

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep with optional analytic comparison");
  sweep->add_option("--config", config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  sweep->add_option("--model", model, "sdm or crf");
  sweep->add_option("--n", n_raw, "particle numbers, comma separated");
  sweep->add_option("--param-grid", grid, "variable=spacing:start:stop:count");
  sweep->add_option("--analytics", analytics, "analytic variants, comma separated");
  sweep->add_option("--observables", obs, "observables to emit, comma separated");
  sweep->add_option("--out", out, "output path (stdout if omitted)");
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--tolerance", tolerance, "quadrature tolerance for analytic variants");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* scan = app.add_subcommand("scan-optimum", "Locate the numeric squeezing minimum");
  scan->add_option("--model", model, "sdm or crf")->required();
  scan->add_option("--n", n_raw, "particle numbers")->required();
  scan->add_option("--bracket", bracket, "lo,hi in zeta (sdm) or 1 - upsilon (crf)");
  scan->add_option("--coarse", coarse, "coarse log-scan points");
  scan->add_option("--tolerance", tolerance, "relative parameter tolerance (default 1e-4)");
  scan->add_option("--out", out, "output path");

  auto* fit = app.add_subcommand("fit", "Fit xi2_min(N) to a scaling family");
  fit->add_option("--in", in, "CSV with N and xi2_min columns")->required()->check(CLI::ExistingFile);
  fit->add_option("--family", family, "power, sdm_log or crf_log")
      ->check(CLI::IsMember({"power", "sdm_log", "crf_log"}));
  fit->add_option("--n-column", n_col);
  fit->add_option("--xi2-column", y_col);

  auto* hus = app.add_subcommand("husimi", "Husimi Q grid of a steady state");
  hus->add_option("--model", model, "sdm or crf")->required();
  hus->add_option("--n", n_single, "particle number")->required();
  hus->add_option("--param", param, "zeta (sdm) or upsilon (crf)")->required();
  hus->add_option("--theta-points", n_theta);
  hus->add_option("--phi-points", n_phi);
  hus->add_option("--out", out, "output path");
  hus->add_option("--state-out", state_out, "also write the density matrix to <prefix>.csv/.json");

  auto* ver = app.add_subcommand("verify", "Closed forms against Liouvillian null states");
  ver->add_option("--n-min", n_min);
  ver->add_option("--n-max", n_max);
  ver->add_option("--points", points, "random points per N and model");
  ver->add_option("--tolerance", tolerance, "entrywise tolerance (default 1e-8)");
  ver->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed())
      return run_sweep_cmd(config, model, n_raw, grid, analytics, obs, out, format, tolerance, threads);
    if (scan->parsed())
      return run_scan_cmd(model, n_raw, bracket, coarse, tolerance > 0 ? tolerance : 1e-4, out);
    if (fit->parsed()) return run_fit_cmd(in, family, n_col, y_col);
    if (hus->parsed()) return run_husimi_cmd(model, n_single, param, n_theta, n_phi, out, state_out);
    if (ver->parsed()) {
      if (n_max > dicke::kLiouvillianMaxN) throw std::invalid_argument("verify: --n-max above Liouvillian limit");
      return run_verify_cmd(n_min, n_max, points, tolerance > 0 ? tolerance : 1e-8, seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
