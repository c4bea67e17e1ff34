// hsm: run hybrid-surrogate experiments, validate configs, print grids.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hsm/experiments.hpp"
#include "hsm/spectral.hpp"

namespace {

enum Exit { kOk = 0, kConfigError = 1, kNotConverged = 2, kIoError = 3 };

int run(const std::string& config_path, const std::string& out_dir, int export_n) {
  hsm::ExperimentConfig cfg;
  try {
    cfg = hsm::load_config(config_path);
  } catch (const hsm::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return kConfigError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << e.what() << '\n';
    return kIoError;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (export_n >= 0) cfg.export_field = export_n;
  if (cfg.export_field == 1) {
    std::cerr << "--export-field must be 0 or >= 2\n";
    return kConfigError;
  }

  hsm::ExperimentReport rep;
  try {
    rep = hsm::run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const hsm::RankDeficientError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kNotConverged;
  }

  const std::filesystem::path dir(cfg.out_dir);
  try {
    hsm::export_report(rep, (dir / "report.json").string());
    if (cfg.export_field >= 2) {
      const auto truth = hsm::make_truth(cfg);
      hsm::export_field(rep.hsm.fit.theta, truth, cfg.export_field, (dir / "field_hsm.csv").string());
      hsm::export_field(rep.psm.fit.theta, truth, cfg.export_field, (dir / "field_psm.csv").string());
    }
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIoError;
  }

  std::printf("%s: HSM l1 %.3e  PSM l1 %.3e  shock err %.3e  height err %.3e  (%.2f s)\n",
              cfg.experiment == hsm::ExperimentKind::transport ? "transport" : "reconstruction", rep.hsm.l1_error,
              rep.psm.l1_error, rep.shock_location_error, rep.height_error, rep.wall_time_s);
  std::printf("report: %s\n", (dir / "report.json").string().c_str());
  if (!rep.hsm.fit.converged) {
    std::cerr << "warning: outer optimizer stopped at max_iterations\n";
    return kNotConverged;
  }
  return kOk;
}

int validate(const std::string& path) {
  std::string text;
  {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr) {
      std::cerr << "cannot open config file '" << path << "'\n";
      return kIoError;
    }
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, n);
    std::fclose(f);
  }
  const auto errors = hsm::validate_config_text(text);
  if (errors.empty()) {
    std::cout << path << ": ok\n";
    return kOk;
  }
  for (const auto& e : errors) std::cerr << path << ": " << e << '\n';
  return kConfigError;
}

int grid_info(int nx, int nt, double T) {
  const auto gx = hsm::legendre_grid_1d(nx, -1.0, 1.0);
  const auto gt = hsm::legendre_grid_1d(nt, 0.0, T);
  std::printf("axis,index,node,weight\n");
  for (Eigen::Index i = 0; i < gx.nodes.size(); ++i) std::printf("x,%td,%.17g,%.17g\n", i, gx.nodes(i), gx.weights(i));
  for (Eigen::Index i = 0; i < gt.nodes.size(); ++i) std::printf("t,%td,%.17g,%.17g\n", i, gt.nodes(i), gt.weights(i));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid surrogate models: polynomial plus Heaviside jumps"};
  app.require_subcommand(1);

  std::string config, out_dir;
  int export_n = -1;
  auto* run_cmd = app.add_subcommand("run", "Fit HSM and PSM for one experiment and write report.json");
  run_cmd->add_option("--config", config, "Experiment config (JSON)")->required();
  run_cmd->add_option("--out-dir", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--export-field", export_n, "Also write N x N field CSVs (N >= 2)")->check(CLI::NonNegativeNumber);

  std::string vpath;
  auto* val_cmd = app.add_subcommand("validate-config", "Check a config file and list every problem");
  val_cmd->add_option("path", vpath, "Config file")->required();

  int nx = 0, nt = 0;
  double T = 1.0;
  auto* grid_cmd = app.add_subcommand("grid-info", "Print Legendre nodes and weights as CSV");
  grid_cmd->add_option("--nx", nx, "Spatial degree")->required()->check(CLI::NonNegativeNumber);
  grid_cmd->add_option("--nt", nt, "Time degree")->required()->check(CLI::NonNegativeNumber);
  grid_cmd->add_option("--T", T, "Time horizon")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*run_cmd) return run(config, out_dir, export_n);
  if (*val_cmd) return validate(vpath);
  return grid_info(nx, nt, T);
}
