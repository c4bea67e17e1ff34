#include "hsm/quadratic_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "hsm/quadrature.hpp"
#include "hsm/sobolev.hpp"
#include "hsm/spectral.hpp"

namespace hsm {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Fn = std::function<double(double)>;

class KroneckerSolver final : public GramSolver {
 public:
  KroneckerSolver(const Eigen::MatrixXd& mx, const Eigen::MatrixXd& mt, double lambda)
      : GramSolver(lambda), mx_(mx), mt_(mt) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(mx), et(mt);
    ux_ = ex.eigenvectors();
    ut_ = et.eigenvectors();
    lx_ = ex.eigenvalues().cwiseMax(0.0);
    lt_ = et.eigenvalues().cwiseMax(0.0);
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& y) const override {
    Eigen::Map<const RowMat> ym(y.data(), mx_.rows(), mt_.rows());
    RowMat z = ux_.transpose() * ym * ut_;
    for (Eigen::Index a = 0; a < z.rows(); ++a)
      for (Eigen::Index b = 0; b < z.cols(); ++b) z(a, b) /= lx_(a) * lt_(b) + lambda_;
    RowMat x = ux_ * z * ut_.transpose();
    return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& xv) const override {
    Eigen::Map<const RowMat> xm(xv.data(), mx_.rows(), mt_.rows());
    RowMat r = mx_ * xm * mt_.transpose();
    return Eigen::Map<const Eigen::VectorXd>(r.data(), r.size());
  }

  double condition_estimate() const override {
    const double hi = lx_.maxCoeff() * lt_.maxCoeff() + lambda_;
    const double lo = lx_.minCoeff() * lt_.minCoeff() + lambda_;
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  }

 private:
  Eigen::MatrixXd mx_, mt_, ux_, ut_;
  Eigen::VectorXd lx_, lt_;
};

class DenseSolver final : public GramSolver {
 public:
  DenseSolver(const Eigen::MatrixXd& g, double lambda) : GramSolver(lambda), g_(g) {
    Eigen::MatrixXd reg = g;
    reg.diagonal().array() += lambda;
    llt_.compute(reg);
    ok_ = llt_.info() == Eigen::Success;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& y) const override {
    if (!ok_) throw std::runtime_error("gram solver: matrix is not positive definite");
    return llt_.solve(y);
  }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const override { return g_ * x; }
  double condition_estimate() const override {
    if (!ok_) return std::numeric_limits<double>::infinity();
    const double rc = llt_.rcond();
    return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  }

 private:
  Eigen::MatrixXd g_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  bool ok_ = false;
};

Eigen::VectorXd kron_vec(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// vec_rowmajor(Vx' Wx B) for a per-column moment table B (rows = x nodes).
Eigen::VectorXd contract_x(const Eigen::MatrixXd& vx, const Eigen::VectorXd& wx, const Eigen::MatrixXd& rows) {
  RowMat m = vx.transpose() * wx.asDiagonal() * rows;
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& v, const Eigen::VectorXd& w) {
  Eigen::MatrixXd g = v.transpose() * w.asDiagonal() * v;
  return 0.5 * (g + g.transpose());
}

double to_ref(double y, double a, double b) { return std::clamp((2.0 * y - a - b) / (b - a), -1.0, 1.0); }

// Chebyshev Gram on [a, b] (affine to [-1, 1]), exact.
Eigen::MatrixXd exact_gram_1d(int p, double a, double b) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p + 1, p + 1);
  for_each_piece_node(a, b, {}, p + 1, [&](double y, double w) {
    const Eigen::VectorXd t = chebyshev_all(p, to_ref(y, a, b));
    g.noalias() += w * t * t.transpose();
  });
  return 0.5 * (g + g.transpose());
}

// int_lo^hi T_k(ref(y)) dy for k = 0..p, exact.
Eigen::VectorXd chebyshev_integrals(int p, double lo, double hi, double a, double b) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(p + 1);
  for_each_piece_node(lo, hi, {}, p / 2 + 1, [&](double y, double w) { m += w * chebyshev_all(p, to_ref(y, a, b)); });
  return m;
}

struct Moments {
  Eigen::VectorXd tk;  // int T_k f
  double f1 = 0.0;     // int f
  double f2 = 0.0;     // int f^2
};

Moments data_moments(int p, double lo, double hi, double a, double b, const Fn& f, std::span<const double> cuts,
                     int npts) {
  Moments m;
  m.tk = Eigen::VectorXd::Zero(p + 1);
  for_each_piece_node(lo, hi, cuts, npts, [&](double y, double w) {
    const double fy = f(y);
    m.tk += (w * fy) * chebyshev_all(p, to_ref(y, a, b));
    m.f1 += w * fy;
    m.f2 += w * fy * fy;
  });
  return m;
}

// Pieces of [-1, 1] where s(x) >= t0.
std::vector<std::pair<double, double>> intervals_below_shock(const ShockParam& s, double t0) {
  std::vector<double> c(s.coefficients.data(), s.coefficients.data() + s.coefficients.size());
  c[0] -= t0;
  const auto roots = polynomial_roots_in(c, -1.0, 1.0);
  const auto pts = split_points(-1.0, 1.0, roots);
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double mid = 0.5 * (pts[i] + pts[i + 1]);
    if (shock_eval(s, mid) >= t0) out.emplace_back(pts[i], pts[i + 1]);
  }
  return out;
}

struct AxisData {
  Eigen::MatrixXd vx, vt;  // Chebyshev values at grid nodes
  Eigen::VectorXd wx, wt;
};

AxisData axis_data(const TensorGrid& grid, const std::vector<int>& degrees, double T) {
  if (grid.dim() != 2 || degrees.size() != 2)
    throw std::invalid_argument("quadratic model: only space x time problems are supported");
  const auto& gx = grid.axes[0];
  const auto& gt = grid.axes[1];
  if (std::abs(gt.a) > 1e-14 || std::abs(gt.b - T) > 1e-12 * T || std::abs(gx.a + 1.0) > 1e-14 ||
      std::abs(gx.b - 1.0) > 1e-14)
    throw std::invalid_argument("quadratic model: grid must cover [-1, 1] x [0, T]");
  AxisData d;
  d.vx = chebyshev_vandermonde_1d(std::span<const double>(gx.nodes.data(), gx.size()), degrees[0], -1.0, 1.0);
  d.vt = chebyshev_vandermonde_1d(std::span<const double>(gt.nodes.data(), gt.size()), degrees[1], 0.0, T);
  d.wx = gx.weights;
  d.wt = gt.weights;
  return d;
}

// -------------------------------------------------------------------------

class ReconstructionModel final : public QuadraticLossModel {
 public:
  ReconstructionModel(GroundTruth truth, TensorGrid grid, std::vector<int> degrees, SplitCubature cubature, int k)
      : truth_(std::move(truth)), grid_(std::move(grid)), degrees_(std::move(degrees)), cubature_(cubature), k_(k) {
    if (k_ < 0) throw std::invalid_argument("reconstruction model: k must be >= 0");
    if (cubature_ == SplitCubature::shock_fitted && (k_ != 0 || !truth_.analytic()))
      throw std::invalid_argument("reconstruction model: shock-fitted cubature needs k = 0 and analytic data");
    T_ = truth_.T();
    ax_ = axis_data(grid_, degrees_, T_);
    const auto nx = grid_.axes[0].size(), nt = grid_.axes[1].size();
    data_.resize(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(nt));
    for (std::size_t i = 0; i < nx; ++i)
      for (std::size_t j = 0; j < nt; ++j)
        data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            truth_(grid_.axes[0].nodes(static_cast<Eigen::Index>(i)), grid_.axes[1].nodes(static_cast<Eigen::Index>(j)));

    mx_ = weighted_gram(ax_.vx, ax_.wx);
    if (k_ > 0) {
      sob_ = sobolev_weight_matrix(grid_, k_);
      v_full_ = Eigen::kroneckerProduct(ax_.vx, ax_.vt);
      gvec_ = Eigen::Map<const Eigen::VectorXd>(RowMat(data_).data(), data_.size());
      b_ = v_full_.transpose() * (sob_->matrix * gvec_);
      c_ = gvec_.dot(sob_->matrix * gvec_);
    } else if (cubature_ == SplitCubature::nodal) {
      mt_ = weighted_gram(ax_.vt, ax_.wt);
      b_ = contract_x(ax_.vx, ax_.wx, data_ * ax_.wt.asDiagonal() * ax_.vt);
      c_ = ax_.wx.dot(data_.cwiseAbs2() * ax_.wt);
    } else {
      mt_ = exact_gram_1d(degrees_[1], 0.0, T_);
      const int pt = degrees_[1];
      Eigen::MatrixXd rows(static_cast<Eigen::Index>(nx), pt + 1);
      c_ = 0.0;
      for (std::size_t i = 0; i < nx; ++i) {
        const double x = grid_.axes[0].nodes(static_cast<Eigen::Index>(i));
        const auto cuts = truth_.time_breakpoints(x);
        const auto m = data_moments(pt, 0.0, T_, 0.0, T_, [&](double t) { return truth_(x, t); }, cuts, npts());
        rows.row(static_cast<Eigen::Index>(i)) = m.tk.transpose();
        c_ += ax_.wx(static_cast<Eigen::Index>(i)) * m.f2;
      }
      b_ = contract_x(ax_.vx, ax_.wx, rows);
    }
  }

  std::string kind() const override { return "reconstruction"; }
  const std::vector<int>& degrees() const override { return degrees_; }
  double horizon() const override { return T_; }
  const GroundTruth& truth() const override { return truth_; }
  const Eigen::VectorXd& b() const override { return b_; }
  double c() const override { return c_; }

  ShockBlock shock_block(const ShockParam& s, double lambda) const override {
    if (k_ > 0) return sobolev_block(s, lambda);
    const auto nx = grid_.axes[0].size();
    const int pt = degrees_[1];
    Eigen::MatrixXd rows = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nx), pt + 1);
    Eigen::VectorXd ghh(static_cast<Eigen::Index>(nx)), bh(static_cast<Eigen::Index>(nx));
    const auto& gt = grid_.axes[1];
    for (std::size_t i = 0; i < nx; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const double x = grid_.axes[0].nodes(ii);
      const double si = shock_eval(s, x);
      if (cubature_ == SplitCubature::nodal) {
        double gh = 0.0, bb = 0.0;
        for (Eigen::Index j = 0; j < gt.nodes.size() && gt.nodes(j) <= si; ++j) {
          rows.row(ii) += ax_.wt(j) * ax_.vt.row(j);
          gh += ax_.wt(j);
          bb += ax_.wt(j) * data_(ii, j);
        }
        ghh(ii) = gh;
        bh(ii) = bb;
      } else {
        const double top = std::clamp(si, 0.0, T_);
        rows.row(ii) = chebyshev_integrals(pt, 0.0, top, 0.0, T_).transpose();
        const auto cuts = truth_.time_breakpoints(x);
        double acc = 0.0;
        for_each_piece_node(0.0, top, cuts, npts(), [&](double t, double w) { acc += w * truth_(x, t); });
        ghh(ii) = top;
        bh(ii) = acc;
      }
    }
    ShockBlock blk;
    blk.g = contract_x(ax_.vx, ax_.wx, rows);
    blk.g_hh = ax_.wx.dot(ghh);
    blk.b_h = ax_.wx.dot(bh);
    return blk;
  }

  LossBreakdown evaluate(const HsmParams& theta) const override {
    if (sob_) return reconstruction_loss(theta, truth_, grid_, *sob_);
    return reconstruction_loss(theta, truth_, grid_, 0, cubature_);
  }

 protected:
  Eigen::MatrixXd dense_gram() const override {
    if (sob_) {
      Eigen::MatrixXd g = v_full_.transpose() * sob_->matrix * v_full_;
      return 0.5 * (g + g.transpose());
    }
    return Eigen::kroneckerProduct(mx_, mt_);
  }
  std::optional<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> kronecker_gram() const override {
    if (sob_) return std::nullopt;
    return std::make_pair(mx_, mt_);
  }

 private:
  int npts() const { return fitted_rule_points(std::max(degrees_[1], grid_.axes[1].degree)); }

  // Nodal split with a full Sobolev matrix: cross-side couplings are dropped.
  ShockBlock sobolev_block(const ShockParam& s, double lambda) const {
    const auto part = partition_grid(grid_, s);
    const auto n = static_cast<Eigen::Index>(grid_.size());
    Eigen::VectorXd side = Eigen::VectorXd::Zero(n);
    for (auto k : part.left) side(static_cast<Eigen::Index>(k)) = 1.0;
    Eigen::MatrixXd ws = sob_->matrix;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (side(i) != side(j)) ws(i, j) = 0.0;
    const Eigen::MatrixXd wv = ws * v_full_;
    Eigen::MatrixXd g = v_full_.transpose() * wv;
    g = 0.5 * (g + g.transpose());
    const Eigen::VectorXd wg = ws * gvec_;
    const Eigen::VectorXd w1 = ws * side;
    ShockBlock blk;
    blk.g = v_full_.transpose() * w1;
    blk.g_hh = side.dot(w1);
    blk.b_h = side.dot(wg);
    blk.b = v_full_.transpose() * wg;
    blk.c = gvec_.dot(wg);
    blk.solver = make_dense_solver(g, lambda);
    return blk;
  }

  GroundTruth truth_;
  TensorGrid grid_;
  std::vector<int> degrees_;
  SplitCubature cubature_;
  int k_;
  double T_ = 1.0;
  AxisData ax_;
  Eigen::MatrixXd data_;
  Eigen::MatrixXd mx_, mt_;
  Eigen::VectorXd b_;
  double c_ = 0.0;
  std::optional<SobolevWeights> sob_;
  Eigen::MatrixXd v_full_;
  Eigen::VectorXd gvec_;
};

// -------------------------------------------------------------------------

class TransportModel final : public QuadraticLossModel {
 public:
  TransportModel(GroundTruth truth, double v, TensorGrid grid, std::vector<int> degrees, SplitCubature cubature)
      : truth_(std::move(truth)), v_(v), grid_(std::move(grid)), degrees_(std::move(degrees)), cubature_(cubature) {
    if (cubature_ == SplitCubature::shock_fitted && !truth_.analytic())
      throw std::invalid_argument("transport model: shock-fitted cubature needs analytic data");
    T_ = truth_.T();
    ax_ = axis_data(grid_, degrees_, T_);
    const int px = degrees_[0], pt = degrees_[1];
    const Eigen::MatrixXd dx = diff_matrix_1d(grid_.axes[0]);
    const Eigen::MatrixXd dt = diff_matrix_1d(grid_.axes[1]);
    const Eigen::MatrixXd wxvx = ax_.wx.asDiagonal() * ax_.vx;
    const Eigen::MatrixXd wtvt = ax_.wt.asDiagonal() * ax_.vt;
    a_ = Eigen::kroneckerProduct(wxvx, ax_.wt.asDiagonal() * (dt * ax_.vt));
    a_ += v_ * Eigen::MatrixXd(Eigen::kroneckerProduct(ax_.wx.asDiagonal() * (dx * ax_.vx), wtvt));

    const auto np = static_cast<Eigen::Index>((px + 1) * (pt + 1));
    gram_ = a_.transpose() * a_;
    b_ = Eigen::VectorXd::Zero(np);
    c_ = 0.0;

    // Initial line t = 0: time factor T_b(-1).
    e_ = chebyshev_all(pt, -1.0);
    const Fn u0 = [this](double x) { return truth_(x, 0.0); };
    Eigen::MatrixXd m0;
    Eigen::VectorXd b0;
    if (cubature_ == SplitCubature::nodal) {
      m0 = weighted_gram(ax_.vx, ax_.wx);
      Eigen::VectorXd vals(ax_.wx.size());
      for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = u0(grid_.axes[0].nodes(i));
      b0 = ax_.vx.transpose() * ax_.wx.cwiseProduct(vals);
      c_ += ax_.wx.dot(vals.cwiseAbs2());
    } else {
      m0 = exact_gram_1d(px, -1.0, 1.0);
      const auto cuts = truth_.space_breakpoints(0.0);
      const auto m = data_moments(px, -1.0, 1.0, -1.0, 1.0, u0, cuts, npts_x());
      b0 = m.tk;
      c_ += m.f2;
    }
    gram_ += Eigen::kroneckerProduct(m0, e_ * e_.transpose());
    b_ += kron_vec(b0, e_);

    // Boundary lines x = -1, +1: space factor T_a(x_b).
    for (int side = 0; side < 2; ++side) {
      const double xb = side == 0 ? -1.0 : 1.0;
      f_[side] = chebyshev_all(px, xb);
      const Fn gb = [this, xb](double t) { return truth_(xb, t); };
      Eigen::MatrixXd mb;
      Eigen::VectorXd bb;
      if (cubature_ == SplitCubature::nodal) {
        mb = weighted_gram(ax_.vt, ax_.wt);
        Eigen::VectorXd vals(ax_.wt.size());
        for (Eigen::Index j = 0; j < vals.size(); ++j) vals(j) = gb(grid_.axes[1].nodes(j));
        bb = ax_.vt.transpose() * ax_.wt.cwiseProduct(vals);
        c_ += ax_.wt.dot(vals.cwiseAbs2());
      } else {
        mb = exact_gram_1d(pt, 0.0, T_);
        const auto cuts = truth_.time_breakpoints(xb);
        const auto m = data_moments(pt, 0.0, T_, 0.0, T_, gb, cuts, npts_t());
        bb = m.tk;
        c_ += m.f2;
      }
      gram_ += Eigen::kroneckerProduct(f_[side] * f_[side].transpose(), mb);
      b_ += kron_vec(f_[side], bb);
    }
    gram_ = 0.5 * (gram_ + gram_.transpose());
  }

  std::string kind() const override { return "transport"; }
  const std::vector<int>& degrees() const override { return degrees_; }
  double horizon() const override { return T_; }
  const GroundTruth& truth() const override { return truth_; }
  const Eigen::VectorXd& b() const override { return b_; }
  double c() const override { return c_; }

  ShockBlock shock_block(const ShockParam& s, double) const override {
    const int px = degrees_[0], pt = degrees_[1];
    ShockBlock blk;
    const Eigen::VectorXd sigma = shock_line_vector(s, v_, grid_);
    blk.g = a_.transpose() * sigma;
    blk.g_hh = sigma.squaredNorm();
    blk.b_h = 0.0;

    // Initial line: indicator s(x) >= 0.
    Eigen::VectorXd g0 = Eigen::VectorXd::Zero(px + 1);
    double h0 = 0.0, bh0 = 0.0;
    if (cubature_ == SplitCubature::nodal) {
      const auto& gx = grid_.axes[0];
      for (Eigen::Index i = 0; i < gx.nodes.size(); ++i) {
        if (!(shock_eval(s, gx.nodes(i)) >= 0.0)) continue;
        g0 += ax_.wx(i) * ax_.vx.row(i).transpose();
        h0 += ax_.wx(i);
        bh0 += ax_.wx(i) * truth_(gx.nodes(i), 0.0);
      }
    } else {
      const auto cuts = truth_.space_breakpoints(0.0);
      for (const auto& [lo, hi] : intervals_below_shock(s, 0.0)) {
        g0 += chebyshev_integrals(px, lo, hi, -1.0, 1.0);
        h0 += hi - lo;
        for_each_piece_node(lo, hi, cuts, npts_x(), [&](double x, double w) { bh0 += w * truth_(x, 0.0); });
      }
    }
    blk.g += kron_vec(g0, e_);
    blk.g_hh += h0;
    blk.b_h += bh0;

    // Boundary lines: indicator t <= s(x_b).
    for (int side = 0; side < 2; ++side) {
      const double xb = side == 0 ? -1.0 : 1.0;
      const double sb = shock_eval(s, xb);
      Eigen::VectorXd gb = Eigen::VectorXd::Zero(pt + 1);
      double hb = 0.0, bhb = 0.0;
      if (cubature_ == SplitCubature::nodal) {
        const auto& gt = grid_.axes[1];
        for (Eigen::Index j = 0; j < gt.nodes.size() && gt.nodes(j) <= sb; ++j) {
          gb += ax_.wt(j) * ax_.vt.row(j).transpose();
          hb += ax_.wt(j);
          bhb += ax_.wt(j) * truth_(xb, gt.nodes(j));
        }
      } else {
        const double top = std::clamp(sb, 0.0, T_);
        gb = chebyshev_integrals(pt, 0.0, top, 0.0, T_);
        hb = top;
        const auto cuts = truth_.time_breakpoints(xb);
        for_each_piece_node(0.0, top, cuts, npts_t(), [&](double t, double w) { bhb += w * truth_(xb, t); });
      }
      blk.g += kron_vec(f_[side], gb);
      blk.g_hh += hb;
      blk.b_h += bhb;
    }
    return blk;
  }

  LossBreakdown evaluate(const HsmParams& theta) const override {
    return total_transport_loss(theta, truth_, grid_, v_, cubature_);
  }

 protected:
  Eigen::MatrixXd dense_gram() const override { return gram_; }

 private:
  int npts_x() const { return fitted_rule_points(std::max(degrees_[0], grid_.axes[0].degree)); }
  int npts_t() const { return fitted_rule_points(std::max(degrees_[1], grid_.axes[1].degree)); }

  GroundTruth truth_;
  double v_;
  TensorGrid grid_;
  std::vector<int> degrees_;
  SplitCubature cubature_;
  double T_ = 1.0;
  AxisData ax_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd gram_;
  Eigen::VectorXd b_;
  double c_ = 0.0;
  Eigen::VectorXd e_;
  Eigen::VectorXd f_[2];
};

}  // namespace

std::shared_ptr<const GramSolver> make_kronecker_solver(const Eigen::MatrixXd& mx, const Eigen::MatrixXd& mt,
                                                        double lambda) {
  return std::make_shared<KroneckerSolver>(mx, mt, lambda);
}

std::shared_ptr<const GramSolver> make_dense_solver(const Eigen::MatrixXd& g, double lambda) {
  return std::make_shared<DenseSolver>(g, lambda);
}

Eigen::Index QuadraticLossModel::num_poly() const {
  Eigen::Index n = 1;
  for (int d : degrees()) n *= d + 1;
  return n;
}

std::shared_ptr<const GramSolver> QuadraticLossModel::gram(double lambda) const {
  std::lock_guard lock(cache_mu_);
  auto it = cache_.find(lambda);
  if (it != cache_.end()) return it->second;
  std::shared_ptr<const GramSolver> s;
  if (auto kf = kronecker_gram())
    s = make_kronecker_solver(kf->first, kf->second, lambda);
  else
    s = make_dense_solver(dense_gram(), lambda);
  cache_.emplace(lambda, s);
  return s;
}

std::unique_ptr<QuadraticLossModel> make_reconstruction_model(GroundTruth truth, TensorGrid grid,
                                                              std::vector<int> degrees, SplitCubature cubature, int k) {
  return std::make_unique<ReconstructionModel>(std::move(truth), std::move(grid), std::move(degrees), cubature, k);
}

std::unique_ptr<QuadraticLossModel> make_transport_model(GroundTruth truth, double v, TensorGrid grid,
                                                         std::vector<int> degrees, SplitCubature cubature) {
  return std::make_unique<TransportModel>(std::move(truth), v, std::move(grid), std::move(degrees), cubature);
}

}  // namespace hsm
