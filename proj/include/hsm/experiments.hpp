#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsm/losses.hpp"
#include "hsm/optimizer.hpp"
#include "hsm/surrogate.hpp"
#include "hsm/truth.hpp"

namespace hsm {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { reconstruction, transport };

/// Parsed experiment configuration; see docs/config_schema.md for the JSON layout.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::reconstruction;
  int nx = 32, nt = 32, m = 2;     // polynomial and shock degrees
  int grid_nx = 32, grid_nt = 32;  // Legendre grid degrees
  int k = 0;
  SplitCubature split = SplitCubature::shock_fitted;
  double T = 1.0;

  double height = 5.0;
  double frequency = 5.0;
  std::vector<double> f_coeffs{-0.3, 0.0, 0.3};  // ascending powers of t
  std::vector<double> shock{0.5, 0.0, 0.25};      // s*(x), ascending powers of x
  double x0 = -0.3;
  double velocity = 1.0;

  SolveOptions solver;
  int n_eval = 300;
  int export_field = 0;
  std::string out_dir = "out";

  /// Defaults of each experiment (transport uses m = 1 and no f/shock entries).
  static ExperimentConfig defaults(ExperimentKind kind);
};

/// All validation problems, one message per offending field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Parses and validates a JSON document. Throws ConfigError.
ExperimentConfig parse_config(const std::string& json_text);
/// Reads and parses a file. Throws ConfigError (content) or std::ios_base::failure (I/O).
ExperimentConfig load_config(const std::string& path);
/// Validation messages of a parsed document (empty when valid).
std::vector<std::string> validate_config_text(const std::string& json_text);
/// Normalized JSON echo with every field present.
std::string config_to_json(const ExperimentConfig& cfg);

struct MethodRow {
  std::string method;  // "HSM" or "PSM"
  FitResult fit;
  double l1_error = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  MethodRow hsm;
  MethodRow psm;
  /// max |s_hat(x) - s*(x)| over evaluation abscissae where s*(x) lies in [0, T]; NaN without a data jump.
  double shock_location_error = 0.0;
  /// |h_hat - h*| in surrogate form.
  double height_error = 0.0;
  /// Transport only: s_hat(x0) and |s_hat'(x0) - 1/v|.
  std::optional<double> shock_at_x0;
  std::optional<double> shock_slope_error;
  bool degenerate_velocity = false;
  double wall_time_s = 0.0;
};

GroundTruth make_truth(const ExperimentConfig& cfg);
TensorGrid make_grid(const ExperimentConfig& cfg);
std::unique_ptr<QuadraticLossModel> make_model(const ExperimentConfig& cfg);

/// Mean |psi - g| over the N x N equidistant grid of the closed box, x-major.
double l1_error(const HsmParams& theta, const GroundTruth& truth, int n);

ExperimentReport run_reconstruction(const ExperimentConfig& cfg);
ExperimentReport run_transport(const ExperimentConfig& cfg);
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// CSV x,t,prediction,truth,abs_error over the N x N evaluation grid.
void export_field(const HsmParams& theta, const GroundTruth& truth, int n, const std::string& path);
std::string report_to_json(const ExperimentReport& report);
/// Writes the report; parent directories are created.
void export_report(const ExperimentReport& report, const std::string& path);

}  // namespace hsm
