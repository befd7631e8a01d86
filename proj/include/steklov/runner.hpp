// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_RUNNER_HPP
#define STEKLOV_RUNNER_HPP

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "steklov/analytic.hpp"
#include "steklov/geometry.hpp"
#include "steklov/shape.hpp"

namespace steklov {

using Json = nlohmann::json;

/// Parsed run configuration with every default made explicit, so emitted
/// reports carry the full provenance of a run.
struct RunConfig {
  OuterDomain outer = OuterDomain::disk(2.0);
  double hole_r = 0.5;
  Vec2 w = Vec2(1.0, 0.0);
  double t = 0.0;
  double h = 0.05;
  double tol = 1e-10;
  int workers = 1;

  // sweep
  int sweep_samples = 20;
  double sweep_safety = kOffsetSafetyFactor;
  bool sweep_with_fd = false;

  // convergence study
  double conv_h0 = 0.2;
  int conv_levels = 4;

  // derivative checks
  std::vector<double> deriv_t_values = {0.75};
  double deriv_delta_first = 0.0;   // 0 -> 1e-3 * t_max
  double deriv_delta_second = 0.0;  // 0 -> 5e-3 * t_max

  // optional export paths for `solve`
  std::string export_mesh, export_matrix, export_eigen;

  Json to_json() const;
};

RunConfig parse_config(const Json& j);
RunConfig load_config(const std::string& path);

struct SweepRecord {
  double t = 0.0;
  double sigma = 0.0;
  double sigma_prime = 0.0;
  double sigma_second = 0.0;
  double fd_first = 0.0;
  double fd_second = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double h = 0.0;
  double sigma2_gap = 0.0;
  bool failed = false;
  std::string failure;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  bool pass = false;
  std::vector<std::string> check_log;  // one line per verdict clause
  Json to_json(const RunConfig& config) const;
  std::string to_csv() const;
};

/// Equal-layout t-sweep with the monotonicity verdict.  Per-offset solves
/// run on up to config.workers threads; failed offsets are recorded and
/// fail the verdict.
SweepResult run_sweep(const RunConfig& config);

struct ConvergenceRow {
  double h = 0.0;
  double sigma_h = 0.0;
  double error = 0.0;           // |sigma_h - sigma_exact| / sigma_exact
  double observed_order = 0.0;  // log2(e_{k-1} / e_k), 0 on the first row
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double sigma_exact = 0.0;
  bool pass = false;
  std::vector<std::string> check_log;
  Json to_json(const RunConfig& config) const;
  std::string to_csv() const;
};

/// Halving-h study against the closed-form concentric eigenvalue
/// (disk outer domains only).
ConvergenceResult run_convergence(const RunConfig& config);

struct DerivRecord {
  DerivativeReport report;
  double first_agreement = 0.0;   // |formula - fd| / |fd|
  double second_agreement = 0.0;
  bool first_ok = false;
  bool second_ok = false;
  bool signs_ok = false;
  bool failed = false;
  std::string failure;
};

struct DerivResult {
  std::vector<DerivRecord> records;
  bool pass = false;
  std::vector<std::string> check_log;
  Json to_json(const RunConfig& config) const;
  std::string to_csv() const;
};

/// Formula-vs-finite-difference consistency report over the configured
/// offsets.  Tolerances: 2% on the first derivative, 5% on the second.
DerivResult run_deriv_check(const RunConfig& config);

struct SolveResult {
  double sigma = 0.0;
  double sigma2 = 0.0;
  double gap = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int nodes = 0;
  MeshLayout layout;
  std::optional<EccentricBounds> bounds;  // disk outer domains only
  Json to_json(const RunConfig& config) const;
};

/// Single-instance solve, honoring the config's export paths.
SolveResult run_solve(const RunConfig& config);

} // namespace steklov

#endif
