// SPDX-License-Identifier: Apache-2.0
//
// Batch front-end: single solves, offset sweeps with monotonicity verdicts,
// mesh convergence studies, derivative consistency checks and closed-form
// bounds, with CSV/JSON emission for plotting.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "steklov/runner.hpp"

namespace {

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw steklov::ConfigError("cannot open output file: " + out_path);
  f << text;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steklov-Dirichlet eigenvalue laboratory for annular domains"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  int workers = 0;
  bool seedless = false;
  app.add_option("--config", config_path, "JSON configuration file")->required();
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "concurrent per-offset solves");
  app.add_flag("--seedless", seedless,
               "document determinism: no randomness is used anywhere");

  auto* solve = app.add_subcommand("solve", "solve one instance");
  auto* sweep = app.add_subcommand("sweep", "offset sweep with verdict");
  auto* converge = app.add_subcommand("converge", "mesh convergence study");
  auto* deriv = app.add_subcommand("deriv-check", "derivative consistency report");
  auto* bounds = app.add_subcommand("bounds", "closed-form shell bounds");

  CLI11_PARSE(app, argc, argv);
  (void)seedless;

  try {
    steklov::RunConfig config = steklov::load_config(config_path);
    if (workers > 0) config.workers = workers;

    bool pass = true;
    std::string text;
    if (solve->parsed()) {
      const auto r = steklov::run_solve(config);
      text = r.to_json(config).dump(2) + "\n";
    } else if (sweep->parsed()) {
      const auto r = steklov::run_sweep(config);
      pass = r.pass;
      text = (format == "csv") ? r.to_csv() : r.to_json(config).dump(2) + "\n";
    } else if (converge->parsed()) {
      const auto r = steklov::run_convergence(config);
      pass = r.pass;
      text = (format == "csv") ? r.to_csv() : r.to_json(config).dump(2) + "\n";
    } else if (deriv->parsed()) {
      const auto r = steklov::run_deriv_check(config);
      pass = r.pass;
      text = (format == "csv") ? r.to_csv() : r.to_json(config).dump(2) + "\n";
    } else if (bounds->parsed()) {
      if (config.outer.kind() != steklov::OuterDomain::Kind::Disk)
        throw steklov::ConfigError("bounds require a disk outer domain");
      const auto b = steklov::eccentric_bounds(config.outer.disk_radius(),
                                               config.hole_r);
      const double conc = steklov::concentric_sigma(
          steklov::ShellSpec{config.outer.disk_radius(), config.hole_r, 2});
      if (format == "csv") {
        text = "lower,upper,concentric\n" + std::to_string(b.lower) + "," +
               std::to_string(b.upper) + "," + std::to_string(conc) + "\n";
      } else {
        steklov::Json j{{"lower", b.lower}, {"upper", b.upper}, {"concentric", conc}};
        text = j.dump(2) + "\n";
      }
    }
    emit(out_path, text);
    return pass ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
