#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dicke/analytic.hpp"
#include "dicke/steady_state.hpp"

namespace dicke {

inline constexpr int kSweepSchemaVersion = 1;

// Control-parameter axis. Variables: zeta (sdm), upsilon, eta, or
// minus_delta_upsilon = 1 - upsilon (crf).
struct GridSpec {
  std::string variable = "zeta";
  std::string spacing = "log";
  double start = 1e-3;
  double stop = 1.0;
  int count = 21;

  std::vector<double> values() const {
    if (count < 1) throw std::invalid_argument("grid: count must be >= 1");
    if (spacing != "log" && spacing != "linear") throw std::invalid_argument("grid: spacing must be log or linear");
    if (spacing == "log" && !(start > 0.0 && stop > 0.0)) throw std::invalid_argument("grid: log spacing needs positive ends");
    if (count > 1 && start == stop) throw std::invalid_argument("grid: values must be strictly monotone");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      v[i] = spacing == "log" ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                              : start + t * (stop - start);
    }
    v.front() = start;
    if (count > 1) v.back() = stop;
    return v;
  }

  // "variable=spacing:start:stop:count", e.g. "zeta=log:1e-4:1:41".
  static GridSpec parse(const std::string& s) {
    GridSpec g;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("grid '" + s + "': expected variable=spacing:start:stop:count");
    g.variable = s.substr(0, eq);
    std::vector<std::string> parts;
    std::stringstream ss(s.substr(eq + 1));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 4) throw std::invalid_argument("grid '" + s + "': expected spacing:start:stop:count");
    g.spacing = parts[0];
    try {
      g.start = std::stod(parts[1]);
      g.stop = std::stod(parts[2]);
      g.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
      throw std::invalid_argument("grid '" + s + "': malformed number");
    }
    g.values();
    return g;
  }
};

inline const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> k = {"sx", "sy", "sz", "sx2", "var_sx", "purity", "xi2"};
  return k;
}

inline const std::vector<std::string>& known_analytics(Model m) {
  static const std::vector<std::string> sdm = {"sdm_linearized", "sdm_even", "sdm_odd"};
  static const std::vector<std::string> crf = {"crf_mean_field", "crf_above", "crf_below", "crf_saddle", "crf_uniform"};
  return m == Model::sdm ? sdm : crf;
}

struct SweepConfig {
  int schema_version = kSweepSchemaVersion;
  Model model = Model::sdm;
  std::vector<int> n_values = {1000, 1001};
  GridSpec grid;
  std::vector<std::string> observables = known_observables();
  std::vector<std::string> analytics;
  std::string out;
  std::string format = "csv";
  double tolerance = 1e-10;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (schema_version != kSweepSchemaVersion)
      throw std::invalid_argument("config: unsupported schema_version " + std::to_string(schema_version));
    if (n_values.empty()) throw std::invalid_argument("config: N list is empty");
    for (int n : n_values)
      if (n < 1) throw std::invalid_argument("config: N must be positive");
    const auto gv = grid.values();
    for (std::size_t i = 1; i < gv.size(); ++i)
      if (!(gv[i] > gv[i - 1]) && !(gv[i] < gv[i - 1]))
        throw std::invalid_argument("config: grid values must be strictly monotone");
    if (gv.size() > 1 && ((gv[1] > gv[0]) != (gv.back() > gv[0])))
      throw std::invalid_argument("config: grid values must be strictly monotone");
    const bool sdm = model == Model::sdm;
    if (sdm && grid.variable != "zeta") throw std::invalid_argument("config: sdm sweeps run over zeta");
    if (!sdm && grid.variable != "upsilon" && grid.variable != "eta" && grid.variable != "minus_delta_upsilon")
      throw std::invalid_argument("config: crf sweeps run over upsilon, eta or minus_delta_upsilon");
    for (const auto& o : observables)
      if (std::find(known_observables().begin(), known_observables().end(), o) == known_observables().end())
        throw std::invalid_argument("config: unknown observable '" + o + "'");
    for (const auto& a : analytics)
      if (std::find(known_analytics(model).begin(), known_analytics(model).end(), a) == known_analytics(model).end())
        throw std::invalid_argument("config: analytic variant '" + a + "' does not apply to " + to_string(model));
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
    if (!(tolerance > 0.0)) throw std::invalid_argument("config: tolerance must be positive");
  }

  // Model parameter (zeta or upsilon) for a grid value at a given N.
  double parameter(int n, double grid_value) const {
    if (grid.variable == "eta") return analytic::upsilon_from_eta(n, grid_value);
    if (grid.variable == "minus_delta_upsilon") return 1.0 - grid_value;
    return grid_value;
  }
};

inline nlohmann::ordered_json to_json(const GridSpec& g) {
  return {{"variable", g.variable}, {"spacing", g.spacing}, {"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

inline nlohmann::ordered_json to_json(const SweepConfig& c) {
  return {{"schema_version", c.schema_version},
          {"model", to_string(c.model)},
          {"n", c.n_values},
          {"grid", to_json(c.grid)},
          {"observables", c.observables},
          {"analytics", c.analytics},
          {"out", c.out},
          {"format", c.format},
          {"tolerance", c.tolerance},
          {"threads", c.threads}};
}

inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig c;
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  static const std::vector<std::string> allowed = {"schema_version", "model",     "n",      "grid",      "observables",
                                                   "analytics",      "out",       "format", "tolerance", "threads"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::invalid_argument("config: unknown key '" + it.key() + "'");
  try {
    c.schema_version = j.at("schema_version").get<int>();
    c.model = parse_model(j.at("model").get<std::string>());
    c.grid.variable = c.model == Model::sdm ? "zeta" : "upsilon";
    if (j.contains("n")) c.n_values = j.at("n").get<std::vector<int>>();
    if (j.contains("grid")) {
      const auto& g = j.at("grid");
      c.grid.variable = g.value("variable", c.grid.variable);
      c.grid.spacing = g.value("spacing", c.grid.spacing);
      c.grid.start = g.value("start", c.grid.start);
      c.grid.stop = g.value("stop", c.grid.stop);
      c.grid.count = g.value("count", c.grid.count);
    }
    if (j.contains("observables")) c.observables = j.at("observables").get<std::vector<std::string>>();
    if (j.contains("analytics")) c.analytics = j.at("analytics").get<std::vector<std::string>>();
    c.out = j.value("out", c.out);
    c.format = j.value("format", c.format);
    c.tolerance = j.value("tolerance", c.tolerance);
    c.threads = j.value("threads", c.threads);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

inline SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config '" + path + "': " + e.what());
  }
  return sweep_config_from_json(j);
}

struct AnalyticRecord {
  ObservableRecord values;
  bool valid = true;
  std::string note;
};

struct SweepPoint {
  int n = 0;
  int grid_index = 0;
  double grid_value = 0.0;
  double parameter = 0.0;
  bool ok = false;
  std::string error;
  ObservableRecord numeric;
  std::vector<AnalyticRecord> analytic;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepPoint> points;  // sorted by (N list order, grid index)

  bool all_ok() const {
    return std::all_of(points.begin(), points.end(), [](const SweepPoint& p) { return p.ok; });
  }
};

namespace detail {

inline ObservableRecord blank_record(const std::string& source) {
  ObservableRecord r;
  r.source = source;
  r.sx = r.sy = r.sz = r.sx2 = r.var_sx = r.purity = r.contrast = r.xi2 = NAN;
  return r;
}

inline AnalyticRecord evaluate_analytic(const std::string& name, int n, double param, double tol) {
  AnalyticRecord a{blank_record(name), true, ""};
  ObservableRecord& r = a.values;
  try {
    if (name == "sdm_linearized") {
      const auto v = analytic::sdm_linearized(param, n);
      r.xi2 = v.xi2;
      a.valid = v.validity.valid;
      a.note = v.validity.note;
    } else if (name == "sdm_even" || name == "sdm_odd") {
      const bool even = name == "sdm_even";
      if ((n % 2 == 0) != even) {
        a.valid = false;
        a.note = even ? "needs even N" : "needs odd N";
        return a;
      }
      if (even) {
        const auto v = analytic::sdm_even(n, param);
        r.sz = v.sz;
        r.sx2 = r.var_sx = v.sx2;
        r.xi2 = v.xi2;
        a.note = v.validity.note;
      } else {
        const auto v = analytic::sdm_odd(n, param);
        r.sz = v.sz;
        r.sx2 = r.var_sx = v.sx2;
        r.xi2 = v.xi2;
        a.note = v.validity.note;
      }
    } else if (name == "crf_mean_field") {
      const auto v = analytic::crf_mean_field(n, param);
      r.sx = v.sx;
      r.sy = v.sy;
      r.sz = v.sz;
    } else if (name == "crf_above") {
      const auto v = analytic::crf_above_threshold(n, param, false);
      r.sy = v.sy;
      a.note = v.validity.note;
    } else if (name == "crf_below") {
      const auto v = analytic::crf_below_threshold(param, n);
      r.xi2 = v.xi2;
      a.valid = v.validity.valid;
      a.note = v.validity.note;
    } else if (name == "crf_saddle" || name == "crf_uniform") {
      QuadratureSpec spec;
      spec.rel_tol = std::max(tol, 1e-14);
      const auto v = analytic::crf_critical(n, analytic::eta_from_upsilon(n, param), spec);
      if (name == "crf_saddle") {
        r.sx2 = r.var_sx = v.sx2_saddle;
        r.xi2 = v.xi2_saddle;
        a.valid = v.validity.valid;
        a.note = v.validity.note;
      } else {
        r.sz = -v.sz_uniform;
        r.sy = 0.5 * n - v.sy_deficit_uniform;
        r.sx2 = r.var_sx = v.sx2_uniform;
        r.xi2 = v.xi2_uniform;
        a.note = "uniform in eta <= 0";
      }
    }
  } catch (const std::exception& e) {
    a.valid = false;
    a.note = e.what();
  }
  return a;
}

// Runs task(i) for i in [0, count) on a pool of workers.
inline void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(count, 1));
  std::atomic<int> next{0};
  auto body = [&] {
    for (int i = next++; i < count; i = next++) task(i);
  };
  if (workers == 1) {
    body();
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const auto grid = config.grid.values();
  const bool want_purity =
      std::find(config.observables.begin(), config.observables.end(), "purity") != config.observables.end();
  SweepResult result{config, {}};
  for (int n : config.n_values)
    for (int g = 0; g < static_cast<int>(grid.size()); ++g) {
      SweepPoint p;
      p.n = n;
      p.grid_index = g;
      p.grid_value = grid[g];
      p.parameter = config.parameter(n, grid[g]);
      result.points.push_back(p);
    }
  detail::parallel_for(static_cast<int>(result.points.size()), config.threads, [&](int i) {
    SweepPoint& p = result.points[i];
    try {
      const ModelParams mp = ModelParams::make(config.model, p.n, p.parameter);
      p.numeric = observables(solve_steady_state(mp), want_purity);
      p.ok = true;
    } catch (const std::exception& e) {
      p.ok = false;
      p.error = e.what();
      p.numeric = detail::blank_record("numeric");
    }
    for (const auto& a : config.analytics)
      p.analytic.push_back(detail::evaluate_analytic(a, p.n, p.parameter, config.tolerance));
  });
  return result;
}

// ---- optimum scan -------------------------------------------------------

struct OptimumScan {
  Model model = Model::sdm;
  int n = 0;
  double param_min = NAN;  // zeta (sdm) or 1 - upsilon (crf)
  double xi2_min = NAN;
  int evaluations = 0;
};

// Numeric squeezing as a function of the scan variable: zeta for sdm,
// 1 - upsilon for crf.
inline double numeric_xi2(Model model, int n, double x) {
  const ModelParams p = model == Model::sdm ? ModelParams::sdm(n, x) : ModelParams::crf(n, 1.0 - x);
  return observables(solve_steady_state(p), false).xi2;
}

// Coarse log scan of [lo, hi] followed by golden-section refinement in
// ln(x) down to relative parameter tolerance rel_tol.
inline OptimumScan scan_optimum(Model model, int n, double lo, double hi, int coarse = 25, double rel_tol = 1e-4,
                                const std::function<double(double)>& objective = {}) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("scan_optimum: bracket must satisfy 0 < lo < hi");
  if (coarse < 3) throw std::invalid_argument("scan_optimum: need at least 3 coarse points");
  OptimumScan out;
  out.model = model;
  out.n = n;
  auto f = [&](double lx) {
    ++out.evaluations;
    const double x = std::exp(lx);
    const double v = objective ? objective(x) : numeric_xi2(model, n, x);
    return std::isfinite(v) ? v : INFINITY;
  };
  const double a = std::log(lo), b = std::log(hi);
  std::vector<double> xs(coarse), fs(coarse);
  for (int i = 0; i < coarse; ++i) {
    xs[i] = a + (b - a) * i / (coarse - 1);
    fs[i] = f(xs[i]);
  }
  const int k = static_cast<int>(std::min_element(fs.begin(), fs.end()) - fs.begin());
  if (k == 0 || k == coarse - 1)
    throw std::runtime_error("scan_optimum: no interior minimum of xi2 in the bracket");
  double l = xs[k - 1], r = xs[k + 1];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = r - g * (r - l), d = l + g * (r - l);
  double fc = f(c), fd = f(d);
  while (r - l > rel_tol) {
    if (fc < fd) {
      r = d;
      d = c;
      fd = fc;
      c = r - g * (r - l);
      fc = f(c);
    } else {
      l = c;
      c = d;
      fc = fd;
      d = l + g * (r - l);
      fd = f(d);
    }
  }
  const double best = fc < fd ? c : d;
  out.param_min = std::exp(best);
  out.xi2_min = std::min(fc, fd);
  return out;
}

// ---- scaling fits -------------------------------------------------------

struct ScalingPoint {
  double n;
  double xi2_min;
};

// power: xi2 = a N^b. sdm_log: xi2 = a g(N; c) with g the exact-W optimum
// of the odd-N squeezing (c = pi/8 reproduces it). crf_log: likewise for
// the driven-superradiance optimum (c = pi/2).
struct FitResult {
  std::string family;
  std::vector<std::pair<std::string, double>> coefficients;
  double residual = 0.0;  // Euclidean norm of log-space residuals
  double n_min = 0.0, n_max = 0.0;

  double coefficient(const std::string& name) const {
    for (const auto& [k, v] : coefficients)
      if (k == name) return v;
    throw std::out_of_range("FitResult: no coefficient '" + name + "'");
  }
};

inline double sdm_log_family(double n, double c) {
  const double u = 0.5 * (1.0 - lambert_w_minus1(-c * std::exp(1.0) / n));
  return u / n * (1.0 + 1.0 / (2.0 * u - 1.0));
}

inline double crf_log_family(double n, double c) {
  const double t = 0.125 - 0.375 * lambert_w_minus1(-c * std::exp(1.0 / 3.0) / n);
  return std::pow(0.25 * n, -1.0 / 3.0) * std::cbrt(t) * (8.0 * t / (8.0 * t - 1.0));
}

inline FitResult fit_scaling(const std::vector<ScalingPoint>& pts, const std::string& family) {
  if (pts.size() < 4) throw std::invalid_argument("fit_scaling: need at least 4 points");
  FitResult out;
  out.family = family;
  out.n_min = INFINITY;
  out.n_max = -INFINITY;
  for (const auto& p : pts) {
    if (!(p.n > 0.0 && p.xi2_min > 0.0)) throw std::domain_error("fit_scaling: N and xi2 must be positive");
    out.n_min = std::min(out.n_min, p.n);
    out.n_max = std::max(out.n_max, p.n);
  }
  if (!(out.n_max > out.n_min)) throw std::invalid_argument("fit_scaling: rank deficient (all N equal)");
  const std::size_t m = pts.size();

  if (family == "power") {
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd y(m);
    for (std::size_t i = 0; i < m; ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = std::log(pts[i].n);
      y[i] = std::log(pts[i].xi2_min);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 2) throw std::invalid_argument("fit_scaling: rank deficient design");
    const Eigen::Vector2d c = qr.solve(y);
    out.coefficients = {{"a", std::exp(c[0])}, {"b", c[1]}};
    out.residual = (a * c - y).norm();
    return out;
  }

  std::function<double(double, double)> g;
  double c_hi;
  if (family == "sdm_log") {
    g = sdm_log_family;
    c_hi = 0.999 * out.n_min * std::exp(-2.0);
  } else if (family == "crf_log") {
    g = crf_log_family;
    c_hi = 0.999 * out.n_min * std::exp(-4.0 / 3.0);
  } else {
    throw std::invalid_argument("fit_scaling: unknown family '" + family + "'");
  }
  // For fixed c the optimal ln a is the mean log-residual.
  auto residual = [&](double lc, double* log_a) {
    const double c = std::exp(lc);
    double mean = 0.0;
    std::vector<double> d(m);
    for (std::size_t i = 0; i < m; ++i) {
      d[i] = std::log(pts[i].xi2_min) - std::log(g(pts[i].n, c));
      mean += d[i];
    }
    mean /= m;
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    if (log_a) *log_a = mean;
    return std::sqrt(ss);
  };
  const double c_lo_log = std::log(1e-6), c_hi_log = std::log(c_hi);
  constexpr int kCoarse = 200;
  double best = c_lo_log, best_r = INFINITY;
  for (int i = 0; i <= kCoarse; ++i) {
    const double lc = c_lo_log + (c_hi_log - c_lo_log) * i / kCoarse;
    const double r = residual(lc, nullptr);
    if (r < best_r) best_r = r, best = lc;
  }
  const double step = (c_hi_log - c_lo_log) / kCoarse;
  double l = std::max(c_lo_log, best - step), r = std::min(c_hi_log, best + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100 && r - l > 1e-12; ++it) {
    const double c1 = r - gr * (r - l), c2 = l + gr * (r - l);
    if (residual(c1, nullptr) < residual(c2, nullptr))
      r = c2;
    else
      l = c1;
  }
  double log_a = 0.0;
  const double lc = 0.5 * (l + r);
  out.residual = residual(lc, &log_a);
  out.coefficients = {{"a", std::exp(log_a)}, {"c", std::exp(lc)}};
  return out;
}

// ---- emission -----------------------------------------------------------

namespace detail {

inline std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

inline nlohmann::ordered_json num(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

inline double record_field(const ObservableRecord& r, const std::string& f) {
  if (f == "sx") return r.sx;
  if (f == "sy") return r.sy;
  if (f == "sz") return r.sz;
  if (f == "sx2") return r.sx2;
  if (f == "var_sx") return r.var_sx;
  if (f == "purity") return r.purity;
  if (f == "xi2") return r.xi2;
  throw std::invalid_argument("unknown observable '" + f + "'");
}

}  // namespace detail

inline void write_sweep_csv(const SweepResult& res, std::ostream& os) {
  const auto& obs = res.config.observables;
  os << "model,n,grid_index," << res.config.grid.variable << ",parameter,source,status";
  for (const auto& o : obs) os << "," << o;
  os << "\n";
  auto row = [&](const SweepPoint& p, const ObservableRecord& r, const std::string& status) {
    os << to_string(res.config.model) << "," << p.n << "," << p.grid_index << "," << detail::fmt(p.grid_value) << ","
       << detail::fmt(p.parameter) << "," << r.source << "," << status;
    for (const auto& o : obs) os << "," << detail::fmt(detail::record_field(r, o));
    os << "\n";
  };
  for (const auto& p : res.points) {
    row(p, p.numeric, p.ok ? "ok" : "error");
    for (const auto& a : p.analytic) row(p, a.values, a.valid ? "valid" : "outside-regime");
  }
}

inline nlohmann::ordered_json sweep_to_json(const SweepResult& res) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSweepSchemaVersion;
  j["config"] = to_json(res.config);
  j["points"] = nlohmann::ordered_json::array();
  auto rec = [&](const ObservableRecord& r) {
    nlohmann::ordered_json o;
    o["source"] = r.source;
    for (const auto& f : res.config.observables) o[f] = detail::num(detail::record_field(r, f));
    return o;
  };
  for (const auto& p : res.points) {
    nlohmann::ordered_json jp;
    jp["n"] = p.n;
    jp["grid_index"] = p.grid_index;
    jp["grid_value"] = p.grid_value;
    jp["parameter"] = p.parameter;
    jp["ok"] = p.ok;
    if (!p.ok) jp["error"] = p.error;
    jp["numeric"] = rec(p.numeric);
    jp["numeric"]["contrast_kind"] = p.numeric.contrast_kind;
    jp["analytic"] = nlohmann::ordered_json::array();
    for (const auto& a : p.analytic) {
      auto ja = rec(a.values);
      ja["valid"] = a.valid;
      ja["note"] = a.note;
      jp["analytic"].push_back(ja);
    }
    j["points"].push_back(jp);
  }
  return j;
}

inline void emit(const SweepResult& res, const std::string& path, const std::string& format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  if (format == "csv")
    write_sweep_csv(res, os);
  else if (format == "json")
    os << sweep_to_json(res).dump(2) << "\n";
  else
    throw std::invalid_argument("unknown format '" + format + "'");
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

// Minimal CSV reader for files written above (no quoting needed).
inline std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  for (std::string line; std::getline(is, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace dicke
