#include "hsm/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "hsm/spectral.hpp"

namespace hsm {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string join_errors(const std::vector<std::string>& errs) {
  std::string s = "invalid config";
  for (const auto& e : errs) s += "\n  " + e;
  return s;
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  const json* section(const json& root, const std::string& key, const std::vector<std::string>& allowed) {
    if (!root.contains(key)) return nullptr;
    const json& s = root.at(key);
    if (!s.is_object()) {
      fail(key, "must be an object");
      return nullptr;
    }
    for (const auto& [k, _] : s.items())
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail(key + "." + k, "unknown field");
    return &s;
  }

  void integer(const json* s, const std::string& path, const std::string& key, int& out, int min) {
    if (s == nullptr || !s->contains(key)) return;
    const json& v = s->at(key);
    if (!v.is_number_integer()) return fail(path + "." + key, "must be an integer");
    const auto x = v.get<long long>();
    if (x < min || x > std::numeric_limits<int>::max())
      return fail(path + "." + key, "must be an integer >= " + std::to_string(min));
    out = static_cast<int>(x);
  }

  void number(const json* s, const std::string& path, const std::string& key, double& out) {
    if (s == nullptr || !s->contains(key)) return;
    const json& v = s->at(key);
    if (!v.is_number()) return fail(path + "." + key, "must be a number");
    out = v.get<double>();
    if (!std::isfinite(out)) fail(path + "." + key, "must be finite");
  }

  void number_list(const json* s, const std::string& path, const std::string& key, std::vector<double>& out) {
    if (s == nullptr || !s->contains(key)) return;
    const json& v = s->at(key);
    if (!v.is_array() || v.empty()) return fail(path + "." + key, "must be a non-empty array of numbers");
    std::vector<double> vals;
    for (const auto& e : v) {
      if (!e.is_number()) return fail(path + "." + key, "must be a non-empty array of numbers");
      vals.push_back(e.get<double>());
    }
    out = std::move(vals);
  }

  void string(const json* s, const std::string& path, const std::string& key, std::string& out) {
    if (s == nullptr || !s->contains(key)) return;
    const json& v = s->at(key);
    if (!v.is_string()) return fail(path + "." + key, "must be a string");
    out = v.get<std::string>();
  }

  void fail(const std::string& path, const std::string& msg) { errors_.push_back(path + ": " + msg); }

 private:
  std::vector<std::string>& errors_;
};

ExperimentConfig parse_impl(const std::string& text, std::vector<std::string>& errors) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    errors.push_back(std::string("<document>: not valid JSON (") + e.what() + ")");
    return {};
  }
  if (!root.is_object()) {
    errors.push_back("<document>: must be a JSON object");
    return {};
  }
  Reader rd(errors);
  const std::vector<std::string> top{"schema_version", "experiment", "degrees", "grid",   "cubature",
                                     "domain",         "truth",      "solver",  "evaluation", "output"};
  for (const auto& [k, _] : root.items())
    if (std::find(top.begin(), top.end(), k) == top.end()) rd.fail(k, "unknown field");

  if (!root.contains("schema_version"))
    rd.fail("schema_version", "required");
  else if (!root["schema_version"].is_number_integer() || root["schema_version"].get<long long>() != kSchemaVersion)
    rd.fail("schema_version", "must be " + std::to_string(kSchemaVersion));

  ExperimentKind kind = ExperimentKind::reconstruction;
  if (!root.contains("experiment") || !root["experiment"].is_string()) {
    rd.fail("experiment", "required, one of \"reconstruction\", \"transport\"");
  } else {
    const auto e = root["experiment"].get<std::string>();
    if (e == "transport")
      kind = ExperimentKind::transport;
    else if (e != "reconstruction")
      rd.fail("experiment", "must be \"reconstruction\" or \"transport\"");
  }
  ExperimentConfig cfg = ExperimentConfig::defaults(kind);

  const json* deg = rd.section(root, "degrees", {"nx", "nt", "m"});
  rd.integer(deg, "degrees", "nx", cfg.nx, 1);
  rd.integer(deg, "degrees", "nt", cfg.nt, 1);
  rd.integer(deg, "degrees", "m", cfg.m, 0);
  cfg.grid_nx = cfg.nx;
  cfg.grid_nt = cfg.nt;
  const json* grid = rd.section(root, "grid", {"nx", "nt"});
  rd.integer(grid, "grid", "nx", cfg.grid_nx, 1);
  rd.integer(grid, "grid", "nt", cfg.grid_nt, 1);

  const json* cub = rd.section(root, "cubature", {"order", "split"});
  rd.integer(cub, "cubature", "order", cfg.k, 0);
  std::string split = to_string(cfg.split);
  rd.string(cub, "cubature", "split", split);
  try {
    cfg.split = split_cubature_from_string(split);
  } catch (const std::invalid_argument&) {
    rd.fail("cubature.split", "must be \"nodal\" or \"shock_fitted\"");
  }

  const json* dom = rd.section(root, "domain", {"T"});
  rd.number(dom, "domain", "T", cfg.T);
  if (!(cfg.T > 0.0)) rd.fail("domain.T", "must be > 0");
  if (kind == ExperimentKind::reconstruction) cfg.shock = {0.5 * cfg.T, 0.0, 0.25};

  const json* tr = rd.section(root, "truth", {"height", "frequency", "f_coeffs", "shock", "x0", "velocity"});
  rd.number(tr, "truth", "height", cfg.height);
  rd.number(tr, "truth", "frequency", cfg.frequency);
  if (kind == ExperimentKind::reconstruction) {
    rd.number_list(tr, "truth", "f_coeffs", cfg.f_coeffs);
    rd.number_list(tr, "truth", "shock", cfg.shock);
    if (cfg.shock.size() > 10) rd.fail("truth.shock", "at most 10 coefficients");
    for (const char* k : {"x0", "velocity"})
      if (tr != nullptr && tr->contains(k)) rd.fail(std::string("truth.") + k, "only used by the transport experiment");
  } else {
    rd.number(tr, "truth", "x0", cfg.x0);
    rd.number(tr, "truth", "velocity", cfg.velocity);
    if (!(cfg.x0 > -1.0 && cfg.x0 < 1.0)) rd.fail("truth.x0", "must lie in (-1, 1)");
    for (const char* k : {"f_coeffs", "shock"})
      if (tr != nullptr && tr->contains(k))
        rd.fail(std::string("truth.") + k, "only used by the reconstruction experiment");
  }

  const json* sol = rd.section(root, "solver", {"method", "max_iterations", "tolerance", "multistart", "ridge", "seed",
                                                "simplex_edge", "stall_window", "min_diameter", "scan"});
  std::string method = to_string(cfg.solver.method);
  rd.string(sol, "solver", "method", method);
  try {
    cfg.solver.method = outer_method_from_string(method);
  } catch (const std::invalid_argument&) {
    rd.fail("solver.method", "must be \"nelder-mead\" or \"coordinate-fd\"");
  }
  rd.integer(sol, "solver", "max_iterations", cfg.solver.max_iterations, 1);
  rd.number(sol, "solver", "tolerance", cfg.solver.tolerance);
  if (!(cfg.solver.tolerance > 0.0)) rd.fail("solver.tolerance", "must be > 0");
  rd.integer(sol, "solver", "multistart", cfg.solver.multistart, 1);
  rd.number(sol, "solver", "ridge", cfg.solver.ridge);
  if (!(cfg.solver.ridge >= 0.0)) rd.fail("solver.ridge", "must be >= 0");
  if (sol != nullptr && sol->contains("seed")) {
    const json& s = sol->at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      rd.fail("solver.seed", "must be a non-negative integer");
    else
      cfg.solver.seed = s.get<std::uint64_t>();
  }
  rd.number(sol, "solver", "simplex_edge", cfg.solver.simplex_edge);
  if (!(cfg.solver.simplex_edge > 0.0)) rd.fail("solver.simplex_edge", "must be > 0");
  rd.integer(sol, "solver", "stall_window", cfg.solver.stall_window, 1);
  rd.number(sol, "solver", "min_diameter", cfg.solver.min_diameter);
  if (!(cfg.solver.min_diameter > 0.0)) rd.fail("solver.min_diameter", "must be > 0");
  const json* scan = sol != nullptr ? rd.section(*sol, "scan", {"c0_points", "higher_points", "range"}) : nullptr;
  rd.integer(scan, "solver.scan", "c0_points", cfg.solver.scan_c0, 0);
  rd.integer(scan, "solver.scan", "higher_points", cfg.solver.scan_higher, 1);
  rd.number(scan, "solver.scan", "range", cfg.solver.scan_range);
  if (!(cfg.solver.scan_range > 0.0)) rd.fail("solver.scan.range", "must be > 0");
  cfg.solver.shock_degree = cfg.m;
  if (cfg.m > 9) rd.fail("degrees.m", "at most 9 (10 shock coefficients)");

  const json* ev = rd.section(root, "evaluation", {"n_eval", "export_field"});
  rd.integer(ev, "evaluation", "n_eval", cfg.n_eval, 2);
  rd.integer(ev, "evaluation", "export_field", cfg.export_field, 0);
  if (cfg.export_field == 1) rd.fail("evaluation.export_field", "must be 0 (off) or >= 2");

  const json* out = rd.section(root, "output", {"dir"});
  rd.string(out, "output", "dir", cfg.out_dir);

  if (cfg.split == SplitCubature::shock_fitted && cfg.k != 0)
    rd.fail("cubature.order", "shock_fitted split supports order 0 only");
  if (kind == ExperimentKind::transport && cfg.k != 0) rd.fail("cubature.order", "transport supports order 0 only");
  return cfg;
}

ojson loss_json(const LossBreakdown& l) {
  return ojson{{"total", l.total},         {"pde", l.pde}, {"boundary", l.boundary}, {"initial", l.initial},
               {"reconstruction", l.reconstruction}};
}

ojson theta_json(const HsmParams& theta) { return ojson::parse(to_json(theta)); }

ojson optional_number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson row_json(const MethodRow& r) {
  ojson j;
  j["method"] = r.method;
  j["l1_error"] = r.l1_error;
  j["loss"] = loss_json(r.fit.loss);
  j["converged"] = r.fit.converged;
  j["outer_iterations"] = r.fit.outer_iterations;
  j["wall_time_s"] = r.fit.wall_time_s;
  j["theta"] = theta_json(r.fit.theta);
  j["loss_trace"] = r.fit.loss_trace;
  return j;
}

std::vector<double> equidistant(double a, double b, int n) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i == n - 1 ? b : a + (b - a) * i / (n - 1);
  return p;
}

template <class F>
void for_each_eval_point(const HsmParams& theta, const GroundTruth& truth, int n, F&& visit) {
  if (n < 2) throw std::invalid_argument("evaluation grid needs N >= 2");
  const auto xs = equidistant(-1.0, 1.0, n);
  const auto ts = equidistant(0.0, theta.T, n);
  const Eigen::VectorXd q = polynomial_on_axes(theta, {xs, ts});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double x = xs[static_cast<std::size_t>(i)], t = ts[static_cast<std::size_t>(j)];
      double p = q(static_cast<Eigen::Index>(i) * n + j);
      for (std::size_t s = 0; s < theta.l(); ++s)
        p += theta.h(static_cast<Eigen::Index>(s)) * heaviside_eval(theta.shocks[s], x, t);
      visit(x, t, p, truth(x, t));
    }
}

void shock_metrics(ExperimentReport& rep, const GroundTruth& truth) {
  const auto& theta = rep.hsm.fit.theta;
  const double h_hat = theta.h.size() ? theta.h(0) : 0.0;
  if (!truth.jump()) {
    rep.height_error = std::abs(h_hat);
    rep.shock_location_error = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  const auto& js = *truth.jump();
  rep.height_error = std::abs(h_hat - js.height);
  double err = 0.0;
  bool any = false;
  for (double x : equidistant(-1.0, 1.0, rep.config.n_eval)) {
    const double st = shock_eval(js.shock, x);
    if (!(st >= 0.0 && st <= truth.T())) continue;
    err = std::max(err, std::abs(shock_eval(theta.shocks[0], x) - st));
    any = true;
  }
  rep.shock_location_error = any ? err : std::numeric_limits<double>::quiet_NaN();
}

MethodRow make_row(std::string name, FitResult fit, const GroundTruth& truth, int n_eval) {
  MethodRow r;
  r.method = std::move(name);
  r.l1_error = l1_error(fit.theta, truth, n_eval);
  r.fit = std::move(fit);
  return r;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors) : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

ExperimentConfig ExperimentConfig::defaults(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  if (kind == ExperimentKind::transport) {
    c.m = 1;
    c.f_coeffs.clear();
    c.shock.clear();
    // Constant starts miss the narrow valley around the characteristic.
    c.solver.scan_c0 = 100;
  }
  c.solver.shock_degree = c.m;
  return c;
}

ExperimentConfig parse_config(const std::string& json_text) {
  std::vector<std::string> errors;
  ExperimentConfig cfg = parse_impl(json_text, errors);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

std::vector<std::string> validate_config_text(const std::string& json_text) {
  std::vector<std::string> errors;
  parse_impl(json_text, errors);
  return errors;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = c.experiment == ExperimentKind::transport ? "transport" : "reconstruction";
  j["degrees"] = ojson{{"nx", c.nx}, {"nt", c.nt}, {"m", c.m}};
  j["grid"] = ojson{{"nx", c.grid_nx}, {"nt", c.grid_nt}};
  j["cubature"] = ojson{{"order", c.k}, {"split", to_string(c.split)}};
  j["domain"] = ojson{{"T", c.T}};
  ojson tr;
  tr["height"] = c.height;
  tr["frequency"] = c.frequency;
  if (c.experiment == ExperimentKind::reconstruction) {
    tr["f_coeffs"] = c.f_coeffs;
    tr["shock"] = c.shock;
  } else {
    tr["x0"] = c.x0;
    tr["velocity"] = c.velocity;
  }
  j["truth"] = tr;
  j["solver"] = ojson{{"method", to_string(c.solver.method)}, {"max_iterations", c.solver.max_iterations},
                      {"tolerance", c.solver.tolerance},       {"multistart", c.solver.multistart},
                      {"ridge", c.solver.ridge},               {"seed", c.solver.seed},
                      {"simplex_edge", c.solver.simplex_edge}, {"stall_window", c.solver.stall_window},
                      {"min_diameter", c.solver.min_diameter},
                      {"scan", ojson{{"c0_points", c.solver.scan_c0},
                                     {"higher_points", c.solver.scan_higher},
                                     {"range", c.solver.scan_range}}}};
  j["evaluation"] = ojson{{"n_eval", c.n_eval}, {"export_field", c.export_field}};
  j["output"] = ojson{{"dir", c.out_dir}};
  return j.dump(2);
}

GroundTruth make_truth(const ExperimentConfig& c) {
  if (c.experiment == ExperimentKind::transport)
    return GroundTruth::transport(c.frequency, c.height, c.x0, c.velocity, c.T);
  const int deg = static_cast<int>(c.shock.size()) - 1;
  Eigen::VectorXd coeffs = Eigen::Map<const Eigen::VectorXd>(c.shock.data(), static_cast<Eigen::Index>(c.shock.size()));
  return GroundTruth::shifted_sine(c.frequency, c.height, c.f_coeffs, ShockParam(deg, 1, c.T, coeffs));
}

TensorGrid make_grid(const ExperimentConfig& c) {
  return tensor_grid({legendre_grid_1d(c.grid_nx, -1.0, 1.0), legendre_grid_1d(c.grid_nt, 0.0, c.T)});
}

std::unique_ptr<QuadraticLossModel> make_model(const ExperimentConfig& c) {
  if (c.experiment == ExperimentKind::transport)
    return make_transport_model(make_truth(c), c.velocity, make_grid(c), {c.nx, c.nt}, c.split);
  return make_reconstruction_model(make_truth(c), make_grid(c), {c.nx, c.nt}, c.split, c.k);
}

double l1_error(const HsmParams& theta, const GroundTruth& truth, int n) {
  double acc = 0.0;
  for_each_eval_point(theta, truth, n, [&](double, double, double p, double g) { acc += std::abs(p - g); });
  return acc / (static_cast<double>(n) * n);
}

ExperimentReport run_reconstruction(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::reconstruction)
    throw std::invalid_argument("run_reconstruction: config is not a reconstruction experiment");
  return run_experiment(cfg);
}

ExperimentReport run_transport(const ExperimentConfig& cfg) {
  if (cfg.experiment != ExperimentKind::transport)
    throw std::invalid_argument("run_transport: config is not a transport experiment");
  return run_experiment(cfg);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto model = make_model(cfg);
  const GroundTruth& truth = model->truth();
  ExperimentReport rep;
  rep.config = cfg;
  rep.hsm = make_row("HSM", optimize_shock(*model, cfg.solver), truth, cfg.n_eval);
  rep.psm = make_row("PSM", fit_psm_baseline(*model, cfg.solver), truth, cfg.n_eval);
  shock_metrics(rep, truth);
  if (cfg.experiment == ExperimentKind::transport) {
    rep.degenerate_velocity = cfg.velocity == 0.0;
    const auto& s = rep.hsm.fit.theta.shocks[0];
    rep.shock_at_x0 = shock_eval(s, cfg.x0);
    if (!rep.degenerate_velocity) rep.shock_slope_error = std::abs(shock_derivative(s, cfg.x0) - 1.0 / cfg.velocity);
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void export_field(const HsmParams& theta, const GroundTruth& truth, int n, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) throw std::ios_base::failure("cannot write field file '" + path + "'");
  std::fputs("x,t,prediction,truth,abs_error\n", f);
  for_each_eval_point(theta, truth, n, [&](double x, double t, double pr, double g) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", x, t, pr, g, std::abs(pr - g));
  });
  if (std::fclose(f) != 0) throw std::ios_base::failure("error closing field file '" + path + "'");
}

std::string report_to_json(const ExperimentReport& r) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = r.config.experiment == ExperimentKind::transport ? "transport" : "reconstruction";
  j["config"] = ojson::parse(config_to_json(r.config));
  j["l1_error"] = r.hsm.l1_error;
  j["shock_location_error"] = optional_number(r.shock_location_error);
  j["height_error"] = r.height_error;
  j["shock_at_x0"] = r.shock_at_x0 ? optional_number(*r.shock_at_x0) : ojson(nullptr);
  j["shock_slope_error"] = r.shock_slope_error ? optional_number(*r.shock_slope_error) : ojson(nullptr);
  j["degenerate_velocity"] = r.degenerate_velocity;
  j["converged"] = r.hsm.fit.converged;
  j["methods"] = ojson::array({row_json(r.hsm), row_json(r.psm)});
  j["wall_time_s"] = r.wall_time_s;
  return j.dump(2);
}

void export_report(const ExperimentReport& report, const std::string& path) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) throw std::ios_base::failure("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write report '" + path + "'");
  out << report_to_json(report) << '\n';
  if (!out) throw std::ios_base::failure("error writing report '" + path + "'");
}

}  // namespace hsm
