#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hsm/losses.hpp"
#include "hsm/multiindex_grid.hpp"
#include "hsm/surrogate.hpp"
#include "hsm/truth.hpp"

namespace hsm {

/// Factored (G + lambda I) for a symmetric PSD polynomial Gram block G.
class GramSolver {
 public:
  virtual ~GramSolver() = default;
  /// (G + lambda I)^{-1} y.
  virtual Eigen::VectorXd solve(const Eigen::VectorXd& y) const = 0;
  /// G x, without the ridge.
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& x) const = 0;
  /// Estimate of cond(G + lambda I) in the 2-norm.
  virtual double condition_estimate() const = 0;
  double lambda() const { return lambda_; }

 protected:
  explicit GramSolver(double lambda) : lambda_(lambda) {}
  double lambda_;
};

/// G = Mx (x) Mt with row-major (x-major) coefficient layout.
std::shared_ptr<const GramSolver> make_kronecker_solver(const Eigen::MatrixXd& mx, const Eigen::MatrixXd& mt,
                                                        double lambda);
std::shared_ptr<const GramSolver> make_dense_solver(const Eigen::MatrixXd& g, double lambda);

/// Loss for a fixed shock, as a quadratic in (xi, h):
///   L = xi' G xi + 2 h g' xi + h^2 g_hh - 2 b' xi - 2 h b_h + c.
/// The polynomial block (G, b, c) is shared unless the model makes it shock dependent.
struct ShockBlock {
  Eigen::VectorXd g;
  double g_hh = 0.0;
  double b_h = 0.0;
  std::shared_ptr<const GramSolver> solver;  // set when G depends on the shock
  std::optional<Eigen::VectorXd> b;
  std::optional<double> c;
};

/// Exact quadratic form of one of the experiment losses over the polynomial layout `degrees()`.
class QuadraticLossModel {
 public:
  virtual ~QuadraticLossModel() = default;

  virtual std::string kind() const = 0;
  virtual const std::vector<int>& degrees() const = 0;
  virtual double horizon() const = 0;
  virtual const GroundTruth& truth() const = 0;
  Eigen::Index num_poly() const;

  /// Shock-independent polynomial block, factored with ridge `lambda` (cached per lambda).
  std::shared_ptr<const GramSolver> gram(double lambda) const;
  virtual const Eigen::VectorXd& b() const = 0;
  virtual double c() const = 0;

  virtual ShockBlock shock_block(const ShockParam& s, double lambda) const = 0;

  /// Direct evaluation of the same loss (used for reporting and cross-checks).
  virtual LossBreakdown evaluate(const HsmParams& theta) const = 0;

 protected:
  virtual Eigen::MatrixXd dense_gram() const = 0;
  /// Kronecker factors of G when available.
  virtual std::optional<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> kronecker_gram() const { return std::nullopt; }

 private:
  mutable std::mutex cache_mu_;
  mutable std::map<double, std::shared_ptr<const GramSolver>> cache_;
};

/// Reconstruction loss with Sobolev order k on `grid`, for a polynomial of per-axis `degrees`.
std::unique_ptr<QuadraticLossModel> make_reconstruction_model(GroundTruth truth, TensorGrid grid,
                                                              std::vector<int> degrees, SplitCubature cubature,
                                                              int k = 0);
/// PDE + boundary + initial loss of transport with speed v on `grid`.
std::unique_ptr<QuadraticLossModel> make_transport_model(GroundTruth truth, double v, TensorGrid grid,
                                                         std::vector<int> degrees, SplitCubature cubature);

}  // namespace hsm
