#include "hsm/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace hsm {

namespace {

constexpr double kMaxCondition = 1e15;
constexpr int kMaxShockCoefficients = 10;
constexpr int kMaxRestarts = 50;

struct Eval {
  Eigen::VectorXd c;
  double f = std::numeric_limits<double>::infinity();
  LinearSolution sol;
};

class Objective {
 public:
  Objective(const QuadraticLossModel& model, const SolveOptions& opts) : model_(model), opts_(opts) {}

  Eval operator()(const Eigen::VectorXd& c) const {
    Eval e;
    e.c = c;
    const ShockParam s(opts_.shock_degree, 1, model_.horizon(), c);
    try {
      e.sol = solve_linear_subproblem(model_, &s, opts_.ridge);
    } catch (const RankDeficientError&) {
      // The jump column is collinear with the polynomial block (shock outside or spanning the box).
      e.sol = solve_linear_subproblem(model_, nullptr, opts_.ridge);
      e.sol.has_jump = true;
    }
    e.f = e.sol.loss;
    return e;
  }

 private:
  const QuadraticLossModel& model_;
  const SolveOptions& opts_;
};

double diameter(const std::vector<Eval>& simplex) {
  double d = 0.0;
  for (std::size_t i = 1; i < simplex.size(); ++i)
    d = std::max(d, (simplex[i].c - simplex[0].c).cwiseAbs().maxCoeff());
  return d;
}

struct RunState {
  Eval best;
  Eigen::MatrixXd directions;  // restart orientation, one column per simplex edge
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

bool stalled(const std::vector<double>& trace, std::size_t since, int window, double tol) {
  if (trace.size() < since + static_cast<std::size_t>(window) + 1) return false;
  return trace[trace.size() - 1 - static_cast<std::size_t>(window)] - trace.back() < tol;
}

// One Nelder-Mead descent from x0 with the given edge. Returns true if a stopping test fired.
bool nelder_mead(const Objective& phi, const Eigen::VectorXd& x0, double edge, const SolveOptions& opts,
                 int budget, RunState& st) {
  const auto n = x0.size();
  std::vector<Eval> s;
  s.push_back(phi(x0));
  const Eigen::MatrixXd dirs = st.directions.size() ? st.directions : Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) s.push_back(phi(x0 + edge * dirs.col(i)));
  // A collapsed simplex is elongated along the valley it got stuck in; the next
  // restart lays its edges along the principal axes of the final simplex.
  auto orient = [&] {
    Eigen::MatrixXd e(n, n);
    for (Eigen::Index i = 0; i < n; ++i) e.col(i) = s[static_cast<std::size_t>(i) + 1].c - s[0].c;
    if (!e.allFinite() || e.norm() == 0.0) return;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(e, Eigen::ComputeFullU);
    st.directions = svd.matrixU();
  };
  auto order = [&] {
    std::stable_sort(s.begin(), s.end(), [](const Eval& a, const Eval& b) { return a.f < b.f; });
  };
  order();
  const std::size_t since = st.trace.size();
  for (int it = 0; it < budget; ++it) {
    if (s[0].f < st.best.f) st.best = s[0];
    if (diameter(s) < opts.min_diameter || stalled(st.trace, since, opts.stall_window, opts.tolerance)) {
      orient();
      return true;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) centroid += s[static_cast<std::size_t>(i)].c;
    centroid /= static_cast<double>(n);
    Eval& worst = s.back();
    const Eval xr = phi(centroid + (centroid - worst.c));
    if (xr.f < s[0].f) {
      const Eval xe = phi(centroid + 2.0 * (centroid - worst.c));
      worst = xe.f < xr.f ? xe : xr;
    } else if (xr.f < s[static_cast<std::size_t>(n) - 1].f) {
      worst = xr;
    } else {
      bool accepted = false;
      if (xr.f < worst.f) {
        const Eval xc = phi(centroid + 0.5 * (xr.c - centroid));
        if (xc.f <= xr.f) {
          worst = xc;
          accepted = true;
        }
      } else {
        const Eval xc = phi(centroid - 0.5 * (centroid - worst.c));
        if (xc.f < worst.f) {
          worst = xc;
          accepted = true;
        }
      }
      if (!accepted)
        for (std::size_t i = 1; i < s.size(); ++i) s[i] = phi(s[0].c + 0.5 * (s[i].c - s[0].c));
    }
    order();
    if (s[0].f < st.best.f) st.best = s[0];
    st.trace.push_back(st.best.f);
    ++st.iterations;
  }
  orient();
  return false;
}

bool coordinate_fd(const Objective& phi, const Eigen::VectorXd& x0, double edge, const SolveOptions& opts,
                   int budget, RunState& st) {
  const auto n = x0.size();
  Eval cur = phi(x0);
  if (cur.f < st.best.f) st.best = cur;
  std::mt19937_64 rng(opts.seed);
  std::vector<Eigen::Index> coords(static_cast<std::size_t>(n));
  std::iota(coords.begin(), coords.end(), Eigen::Index{0});
  double step = edge;
  const std::size_t since = st.trace.size();
  for (int it = 0; it < budget; ++it) {
    if (step < opts.min_diameter || stalled(st.trace, since, opts.stall_window, opts.tolerance)) return true;
    std::shuffle(coords.begin(), coords.end(), rng);
    bool moved = false;
    for (Eigen::Index k : coords) {
      Eigen::VectorXd xp = cur.c, xm = cur.c;
      xp(k) += step;
      xm(k) -= step;
      const Eval fp = phi(xp), fm = phi(xm);
      // Central-difference slope picks the downhill side.
      const double slope = (fp.f - fm.f) / (2.0 * step);
      const Eval& cand = slope < 0.0 ? fp : fm;
      if (cand.f < cur.f) {
        cur = cand;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
    if (cur.f < st.best.f) st.best = cur;
    st.trace.push_back(st.best.f);
    ++st.iterations;
  }
  return false;
}

// Derivative-free search along u from st.best: expanding bracket, then golden section.
// Returns the number of objective evaluations.
int line_search(const Objective& phi, const Eigen::VectorXd& u, double step, RunState& st) {
  const Eigen::VectorXd x0 = st.best.c;
  int evals = 0;
  auto at = [&](double t) {
    ++evals;
    Eval e = phi(x0 + t * u);
    if (e.f < st.best.f) st.best = e;
    return e.f;
  };
  const double f0 = st.best.f;
  double dir = 1.0;
  double f1 = at(step);
  if (!(f1 < f0)) {
    dir = -1.0;
    f1 = at(-step);
    if (!(f1 < f0)) return evals;
  }
  // Bracket [a, c] around b with f(b) below both ends.
  double a = 0.0, b = step, fb = f1, c = 2.0 * step;
  double fc = at(dir * c);
  for (int k = 0; k < 60 && fc < fb; ++k) {
    a = b;
    b = c;
    fb = fc;
    c *= 2.0;
    fc = at(dir * c);
  }
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = a, hi = c;
  double p = hi - kInvPhi * (hi - lo), q = lo + kInvPhi * (hi - lo);
  double fp = at(dir * p), fq = at(dir * q);
  for (int k = 0; k < 60 && hi - lo > 1e-12 * (1.0 + std::abs(b)); ++k) {
    if (fp < fq) {
      hi = q;
      q = p;
      fq = fp;
      p = hi - kInvPhi * (hi - lo);
      fp = at(dir * p);
    } else {
      lo = p;
      p = q;
      fp = fq;
      q = lo + kInvPhi * (hi - lo);
      fq = at(dir * q);
    }
  }
  return evals;
}

// Best `multistart` points of the optional coefficient lattice, ordered by phi then lattice index.
std::vector<Eigen::VectorXd> lattice_starts(const Objective& phi, const SolveOptions& opts, double T) {
  if (opts.scan_c0 <= 0) return {};
  const int nc = opts.shock_degree + 1;
  const int nh = opts.shock_degree == 0 ? 1 : opts.scan_higher;
  std::size_t total = static_cast<std::size_t>(opts.scan_c0);
  for (int k = 1; k < nc; ++k) total *= static_cast<std::size_t>(nh);
  std::vector<std::pair<double, Eigen::VectorXd>> pts;
  pts.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Eigen::VectorXd c(nc);
    std::size_t r = idx;
    for (int k = nc - 1; k >= 1; --k) {
      const auto j = static_cast<int>(r % static_cast<std::size_t>(nh));
      r /= static_cast<std::size_t>(nh);
      c(k) = nh == 1 ? 0.0 : opts.scan_range * T * (2.0 * j / (nh - 1) - 1.0);
    }
    c(0) = T * (static_cast<double>(r) + 0.5) / opts.scan_c0;
    pts.emplace_back(phi(c).f, std::move(c));
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Eigen::VectorXd> out;
  for (std::size_t i = 0; i < pts.size() && out.size() < static_cast<std::size_t>(opts.multistart); ++i)
    out.push_back(pts[i].second);
  return out;
}

HsmParams assemble_theta(const QuadraticLossModel& model, int shock_degree, const LinearSolution& sol,
                         const ShockParam* shock) {
  HsmParams p;
  p.degrees = model.degrees();
  p.d = 1;
  p.m = shock_degree;
  p.T = model.horizon();
  p.xi = sol.xi;
  if (shock != nullptr) {
    p.h = Eigen::VectorXd::Constant(1, sol.h);
    p.shocks.push_back(*shock);
  } else {
    p.h = Eigen::VectorXd(0);
  }
  p.validate();
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::string to_string(OuterMethod m) { return m == OuterMethod::nelder_mead ? "nelder-mead" : "coordinate-fd"; }

OuterMethod outer_method_from_string(const std::string& name) {
  if (name == "nelder-mead") return OuterMethod::nelder_mead;
  if (name == "coordinate-fd") return OuterMethod::coordinate_fd;
  throw std::invalid_argument("unknown outer method '" + name + "' (expected nelder-mead or coordinate-fd)");
}

void SolveOptions::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solver.tolerance must be > 0");
  if (multistart < 1) throw std::invalid_argument("solver.multistart must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("solver.max_iterations must be >= 1");
  if (!(ridge >= 0.0)) throw std::invalid_argument("solver.ridge must be >= 0");
  if (shock_degree < 0) throw std::invalid_argument("solver.shock_degree must be >= 0");
  if (shock_degree + 1 > kMaxShockCoefficients) throw std::invalid_argument("solver.shock_degree must be <= 9");
  if (!(simplex_edge > 0.0)) throw std::invalid_argument("solver.simplex_edge must be > 0");
  if (stall_window < 1) throw std::invalid_argument("solver.stall_window must be >= 1");
  if (!(min_diameter > 0.0)) throw std::invalid_argument("solver.min_diameter must be > 0");
  for (const auto& e : extra_starts)
    if (static_cast<int>(e.size()) != shock_degree + 1)
      throw std::invalid_argument("solver.extra_starts entries need shock_degree + 1 coefficients");
  if (scan_c0 < 0) throw std::invalid_argument("solver.scan.c0_points must be >= 0");
  if (scan_higher < 1) throw std::invalid_argument("solver.scan.higher_points must be >= 1");
  if (!(scan_range > 0.0)) throw std::invalid_argument("solver.scan.range must be > 0");
}

LinearSolution solve_linear_subproblem(const QuadraticLossModel& model, const ShockParam* shock, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("solve_linear_subproblem: lambda must be >= 0");
  ShockBlock blk;
  if (shock != nullptr) blk = model.shock_block(*shock, lambda);
  const auto solver = blk.solver ? blk.solver : model.gram(lambda);
  const Eigen::VectorXd& b = blk.b ? *blk.b : model.b();
  const double c = blk.c ? *blk.c : model.c();

  LinearSolution out;
  out.condition = solver->condition_estimate();
  if (!(out.condition <= kMaxCondition))
    throw RankDeficientError("linear subproblem is numerically singular (condition estimate " +
                             std::to_string(out.condition) + ")");
  const Eigen::VectorXd sb = solver->solve(b);
  if (shock == nullptr) {
    out.xi = sb;
  } else {
    const Eigen::VectorXd sg = solver->solve(blk.g);
    const double schur = blk.g_hh + lambda - blk.g.dot(sg);
    const double scale = blk.g_hh + lambda;
    if (scale == 0.0) {
      // Empty jump column (shock outside the box, no ridge): h has no influence.
      out.xi = sb;
    } else if (!(schur > 0.0) || scale / schur > kMaxCondition) {
      throw RankDeficientError("linear subproblem: jump column is collinear with the polynomial block");
    } else {
      out.h = (blk.b_h - blk.g.dot(sb)) / schur;
      out.xi = sb - out.h * sg;
    }
    out.has_jump = true;
  }
  const Eigen::VectorXd gx = solver->apply(out.xi);
  double loss = out.xi.dot(gx) - 2.0 * b.dot(out.xi) + c;
  Eigen::VectorXd grad_xi = 2.0 * (gx - b);
  double grad_h = 0.0;
  if (shock != nullptr) {
    loss += 2.0 * out.h * blk.g.dot(out.xi) + out.h * out.h * blk.g_hh - 2.0 * out.h * blk.b_h;
    grad_xi += 2.0 * out.h * blk.g;
    grad_h = 2.0 * (blk.g.dot(out.xi) + out.h * blk.g_hh - blk.b_h);
  }
  out.loss = std::max(loss, 0.0);
  out.gradient_norm = std::sqrt(grad_xi.squaredNorm() + grad_h * grad_h);
  return out;
}

FitResult optimize_shock(const QuadraticLossModel& model, const SolveOptions& opts) {
  opts.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const Objective phi(model, opts);
  const Eigen::Index nc = opts.shock_degree + 1;
  const double T = model.horizon();

  RunState st;
  st.best.c = Eigen::VectorXd::Zero(nc);
  std::vector<Eigen::VectorXd> starts;
  for (int j = 1; j <= opts.multistart; ++j) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(nc);
    x0(0) = T * j / (opts.multistart + 1);
    starts.push_back(x0);
  }
  for (const auto& e : opts.extra_starts)
    starts.push_back(Eigen::Map<const Eigen::VectorXd>(e.data(), static_cast<Eigen::Index>(e.size())));
  for (auto& x0 : lattice_starts(phi, opts, T)) starts.push_back(std::move(x0));

  bool all_converged = true;
  for (const Eigen::VectorXd& x0 : starts) {
    RunState run;
    run.best.c = x0;
    run.trace = {};
    bool converged = false;
    int used = 0;
    // Restart from the best point until a restart no longer improves it.
    for (int r = 0; r <= kMaxRestarts && used < opts.max_iterations; ++r) {
      const double before = run.best.f;
      const Eigen::VectorXd start = r == 0 ? x0 : run.best.c;
      const int budget = opts.max_iterations - used;
      const int it0 = run.iterations;
      converged = opts.method == OuterMethod::nelder_mead
                      ? nelder_mead(phi, start, opts.simplex_edge, opts, budget, run)
                      : coordinate_fd(phi, start, opts.simplex_edge, opts, budget, run);
      used += run.iterations - it0;
      if (!converged) break;
      if (opts.method == OuterMethod::nelder_mead && run.directions.size()) {
        line_search(phi, run.directions.col(0), opts.simplex_edge, run);
        run.trace.push_back(run.best.f);
        ++run.iterations;
        ++used;
      }
      if (r > 0 && !(before - run.best.f > opts.tolerance)) break;
    }
    all_converged = all_converged && converged;
    for (double f : run.trace) {
      const double prev = st.trace.empty() ? std::numeric_limits<double>::infinity() : st.trace.back();
      st.trace.push_back(std::min(prev, f));
    }
    st.iterations += run.iterations;
    if (run.best.f < st.best.f) st.best = run.best;
  }

  const ShockParam shock(opts.shock_degree, 1, T, st.best.c);
  FitResult res;
  res.theta = assemble_theta(model, opts.shock_degree, st.best.sol, &shock);
  res.loss = model.evaluate(res.theta);
  res.loss_trace = std::move(st.trace);
  res.outer_iterations = st.iterations;
  res.converged = all_converged;
  res.wall_time_s = seconds_since(t0);
  return res;
}

FitResult fit_psm_baseline(const QuadraticLossModel& model, const SolveOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = solve_linear_subproblem(model, nullptr, opts.ridge);
  FitResult res;
  res.theta = assemble_theta(model, opts.shock_degree, sol, nullptr);
  res.loss = model.evaluate(res.theta);
  res.loss_trace = {sol.loss};
  res.outer_iterations = 0;
  res.converged = true;
  res.wall_time_s = seconds_since(t0);
  return res;
}

FitResult fit_psm_baseline(const GroundTruth& truth, const TensorGrid& grid, int k, double ridge) {
  std::vector<int> degrees;
  for (const auto& ax : grid.axes) degrees.push_back(ax.degree);
  const auto model = make_reconstruction_model(truth, grid, degrees, SplitCubature::nodal, k);
  SolveOptions opts;
  opts.ridge = ridge;
  return fit_psm_baseline(*model, opts);
}

}  // namespace hsm
