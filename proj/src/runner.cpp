// SPDX-License-Identifier: Apache-2.0
#include "steklov/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "steklov/io.hpp"

namespace steklov {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  const auto drain = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < workers; ++k) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
}

OuterDomain parse_outer(const Json& j) {
  const std::string kind = j.value("kind", "disk");
  if (kind == "disk") {
    if (!j.contains("R")) throw ConfigError("disk outer domain needs R");
    return OuterDomain::disk(j["R"].get<double>());
  }
  if (kind == "ellipse") {
    if (!j.contains("a") || !j.contains("b"))
      throw ConfigError("ellipse outer domain needs a and b");
    return OuterDomain::ellipse(j["a"].get<double>(), j["b"].get<double>());
  }
  if (kind == "radial-profile") {
    std::vector<std::pair<int, double>> cs, sn;
    for (const auto& term : j.value("cos", Json::array()))
      cs.emplace_back(term.at(0).get<int>(), term.at(1).get<double>());
    for (const auto& term : j.value("sin", Json::array()))
      sn.emplace_back(term.at(0).get<int>(), term.at(1).get<double>());
    return OuterDomain::radial_profile(j.value("base", 1.0), cs, sn);
  }
  throw ConfigError("unknown outer domain kind: " + kind);
}

Json outer_to_json(const OuterDomain& outer) {
  Json j;
  switch (outer.kind()) {
    case OuterDomain::Kind::Disk:
      j["kind"] = "disk";
      j["R"] = outer.disk_radius();
      break;
    case OuterDomain::Kind::Ellipse:
      j["kind"] = "ellipse";
      j["a"] = outer.ellipse_a();
      j["b"] = outer.ellipse_b();
      break;
    case OuterDomain::Kind::RadialProfile:
      j["kind"] = "radial-profile";
      break;
  }
  return j;
}

struct InstanceSolve {
  Mesh mesh;
  SteklovSystem system;
  EigenPair pair;
  EigenPair second;
  FluxTrace flux;
};

InstanceSolve solve_instance(const AnnulusProblem& problem, double h,
                             const MeshLayout& layout, double tol) {
  InstanceSolve s;
  s.mesh = build_mesh(problem, h, layout);
  s.system = assemble(s.mesh);
  SolveOptions opts;
  opts.tol = tol;
  s.pair = solve_smallest(s.system, opts);
  s.second = solve_second(s.system, s.pair, opts);
  s.flux = recover_inner_flux(s.mesh, s.system, s.pair);
  return s;
}

} // namespace

Json RunConfig::to_json() const {
  Json j;
  j["outer"] = outer_to_json(outer);
  j["hole"] = {{"r", hole_r}, {"w", {w.x(), w.y()}}};
  j["t"] = t;
  j["h"] = h;
  j["tol"] = tol;
  j["workers"] = workers;
  j["sweep"] = {{"samples", sweep_samples},
                {"safety", sweep_safety},
                {"with_fd", sweep_with_fd}};
  j["converge"] = {{"h0", conv_h0}, {"levels", conv_levels}};
  j["deriv"] = {{"t_values", deriv_t_values},
                {"delta_first", deriv_delta_first},
                {"delta_second", deriv_delta_second}};
  return j;
}

RunConfig parse_config(const Json& j) {
  RunConfig c;
  try {
    if (j.contains("outer")) c.outer = parse_outer(j["outer"]);
    if (j.contains("hole")) {
      const auto& hj = j["hole"];
      c.hole_r = hj.value("r", c.hole_r);
      if (hj.contains("w")) {
        c.w = Vec2(hj["w"].at(0).get<double>(), hj["w"].at(1).get<double>());
        const double n = c.w.norm();
        if (!(n > 0.0)) throw ConfigError("hole direction must be nonzero");
        c.w /= n;
      }
    }
    c.t = j.value("t", c.t);
    c.h = j.value("h", c.h);
    c.tol = j.value("tol", c.tol);
    c.workers = j.value("workers", c.workers);
    if (j.contains("sweep")) {
      const auto& sj = j["sweep"];
      c.sweep_samples = sj.value("samples", c.sweep_samples);
      c.sweep_safety = sj.value("safety", c.sweep_safety);
      c.sweep_with_fd = sj.value("with_fd", c.sweep_with_fd);
    }
    if (j.contains("converge")) {
      const auto& cj = j["converge"];
      c.conv_h0 = cj.value("h0", c.conv_h0);
      c.conv_levels = cj.value("levels", c.conv_levels);
    }
    if (j.contains("deriv")) {
      const auto& dj = j["deriv"];
      if (dj.contains("t_values"))
        c.deriv_t_values = dj["t_values"].get<std::vector<double>>();
      c.deriv_delta_first = dj.value("delta_first", c.deriv_delta_first);
      c.deriv_delta_second = dj.value("delta_second", c.deriv_delta_second);
    }
    if (j.contains("export")) {
      const auto& ej = j["export"];
      c.export_mesh = ej.value("mesh", "");
      c.export_matrix = ej.value("matrix", "");
      c.export_eigen = ej.value("eigen", "");
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
  if (!(c.h > 0.0)) throw ConfigError("h must be positive");
  if (!(c.tol > 0.0) || c.tol > 1e-4) throw ConfigError("tol must lie in (0, 1e-4]");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.sweep_samples < 1) throw ConfigError("sweep needs at least one sample");
  if (c.conv_levels < 2) throw ConfigError("convergence study needs >= 2 levels");
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

SweepResult run_sweep(const RunConfig& config) {
  const double tmax = admissible_range(config.outer, config.hole_r, config.w);
  const double t_hi = config.sweep_safety * tmax;
  const int n = config.sweep_samples;

  std::vector<double> ts(n);
  for (int k = 0; k < n; ++k)
    ts[k] = (n == 1) ? 0.0 : t_hi * k / (n - 1);

  // one layout for the whole sweep, sized at the widest instance
  AnnulusProblem widest{config.outer, HoleSpec{config.hole_r, config.w, ts.back()}};
  const MeshLayout layout = choose_layout(widest, config.h);

  const bool is_disk = config.outer.kind() == OuterDomain::Kind::Disk;
  EccentricBounds bounds;
  if (is_disk) bounds = eccentric_bounds(config.outer.disk_radius(), config.hole_r);

  SweepResult result;
  result.records.resize(n);
  parallel_for(n, config.workers, [&](int k) {
    SweepRecord& rec = result.records[k];
    rec.t = ts[k];
    rec.h = config.h;
    rec.lower_bound = is_disk ? bounds.lower : std::nan("");
    rec.upper_bound = is_disk ? bounds.upper : std::nan("");
    try {
      AnnulusProblem prob{config.outer, HoleSpec{config.hole_r, config.w, ts[k]}};
      InstanceSolve s = solve_instance(prob, config.h, layout, config.tol);
      rec.sigma = s.pair.sigma;
      rec.sigma2_gap = s.second.sigma / s.pair.sigma;
      rec.sigma_prime = first_shape_derivative(s.flux, config.w);
      rec.sigma_second =
          second_shape_derivative(s.flux, config.w, config.hole_r).sigma_second;
      if (config.sweep_with_fd && ts[k] > 0.0) {
        const double delta = std::min(1e-3 * tmax, 0.5 * ts[k]);
        const FiniteDifferences fd =
            finite_difference_derivatives(prob, config.h, delta, config.tol);
        rec.fd_first = fd.fd_first;
        rec.fd_second = fd.fd_second;
      } else {
        rec.fd_first = std::nan("");
        rec.fd_second = std::nan("");
      }
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure = e.what();
    }
  });

  // verdict
  auto& log = result.check_log;
  bool ok = true;
  for (const auto& rec : result.records)
    if (rec.failed) {
      ok = false;
      log.push_back("FAIL solve at t=" + fmt17(rec.t) + ": " + rec.failure);
    }
  if (ok) {
    bool decreasing = true;
    for (int k = 0; k + 1 < n; ++k) {
      const double floor = 10.0 * config.tol * result.records[k].sigma;
      if (!(result.records[k + 1].sigma < result.records[k].sigma - floor))
        decreasing = false;
    }
    log.push_back(std::string(decreasing ? "PASS" : "FAIL") +
                  " sigma strictly decreasing across samples");
    ok = ok && decreasing;

    int argmax = 0;
    for (int k = 1; k < n; ++k)
      if (result.records[k].sigma > result.records[argmax].sigma) argmax = k;
    const bool argmax_ok = argmax == 0;
    log.push_back(std::string(argmax_ok ? "PASS" : "FAIL") + " argmax at t = 0");
    ok = ok && argmax_ok;

    if (is_disk) {
      bool in_bounds = true;
      for (const auto& rec : result.records)
        if (!(rec.sigma >= bounds.lower &&
              rec.sigma <= bounds.upper * (1.0 + 2e-3)))
          in_bounds = false;
      log.push_back(std::string(in_bounds ? "PASS" : "FAIL") +
                    " two-sided disk-shell bounds");
      ok = ok && in_bounds;
    }

    double max_slope = 0.0;
    for (const auto& rec : result.records)
      max_slope = std::max(max_slope, std::abs(rec.sigma_prime));
    bool slope_ok = true;
    for (const auto& rec : result.records) {
      if (rec.t == 0.0) {
        if (!(std::abs(rec.sigma_prime) <= 0.02 * max_slope + 1e-12))
          slope_ok = false;
      } else if (!(rec.sigma_prime < 0.0)) {
        slope_ok = false;
      }
    }
    log.push_back(std::string(slope_ok ? "PASS" : "FAIL") +
                  " sigma' <= 0 with equality only at t = 0");
    ok = ok && slope_ok;
  }
  result.pass = ok;
  return result;
}

std::string SweepResult::to_csv() const {
  std::ostringstream os;
  os << "t,sigma,sigma_prime,sigma_second,fd_first,fd_second,lower_bound,"
        "upper_bound,h,sigma2_gap\n";
  for (const auto& r : records) {
    os << fmt17(r.t) << "," << fmt17(r.sigma) << "," << fmt17(r.sigma_prime)
       << "," << fmt17(r.sigma_second) << "," << fmt17(r.fd_first) << ","
       << fmt17(r.fd_second) << "," << fmt17(r.lower_bound) << ","
       << fmt17(r.upper_bound) << "," << fmt17(r.h) << ","
       << fmt17(r.sigma2_gap) << "\n";
  }
  return os.str();
}

Json SweepResult::to_json(const RunConfig& config) const {
  Json j;
  j["config"] = config.to_json();
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["checks"] = check_log;
  Json rows = Json::array();
  for (const auto& r : records) {
    Json row;
    row["t"] = r.t;
    row["sigma"] = r.sigma;
    row["sigma_prime"] = r.sigma_prime;
    row["sigma_second"] = r.sigma_second;
    row["fd_first"] = r.fd_first;
    row["fd_second"] = r.fd_second;
    row["lower_bound"] = r.lower_bound;
    row["upper_bound"] = r.upper_bound;
    row["h"] = r.h;
    row["sigma2_gap"] = r.sigma2_gap;
    if (r.failed) row["failure"] = r.failure;
    rows.push_back(row);
  }
  j["records"] = rows;
  return j;
}

ConvergenceResult run_convergence(const RunConfig& config) {
  if (config.outer.kind() != OuterDomain::Kind::Disk)
    throw ConfigError("convergence study requires a disk outer domain");
  ConvergenceResult result;
  result.sigma_exact = concentric_sigma(
      ShellSpec{config.outer.disk_radius(), config.hole_r, 2});

  std::vector<double> hs(config.conv_levels);
  for (int k = 0; k < config.conv_levels; ++k)
    hs[k] = config.conv_h0 / std::pow(2.0, k);

  result.rows.resize(config.conv_levels);
  parallel_for(config.conv_levels, config.workers, [&](int k) {
    AnnulusProblem prob{config.outer, HoleSpec{config.hole_r, config.w, config.t}};
    const Mesh mesh = build_mesh(prob, hs[k]);
    const SteklovSystem sys = assemble(mesh);
    SolveOptions opts;
    opts.tol = config.tol;
    const EigenPair pair = solve_smallest(sys, opts);
    result.rows[k].h = hs[k];
    result.rows[k].sigma_h = pair.sigma;
    result.rows[k].error =
        std::abs(pair.sigma - result.sigma_exact) / result.sigma_exact;
  });
  for (int k = 1; k < config.conv_levels; ++k)
    result.rows[k].observed_order =
        std::log2(result.rows[k - 1].error / result.rows[k].error);

  bool decreasing = true;
  for (int k = 1; k < config.conv_levels; ++k)
    if (!(result.rows[k].error < result.rows[k - 1].error)) decreasing = false;
  result.check_log.push_back(std::string(decreasing ? "PASS" : "FAIL") +
                             " errors decrease under refinement");
  const double last = result.rows.back().observed_order;
  const bool order_ok = last >= 1.8 && last <= 2.2;
  result.check_log.push_back(std::string(order_ok ? "PASS" : "FAIL") +
                             " final observed order in [1.8, 2.2], got " +
                             fmt17(last));
  result.pass = decreasing && order_ok;
  return result;
}

std::string ConvergenceResult::to_csv() const {
  std::ostringstream os;
  os << "h,sigma_h,error,observed_order\n";
  for (const auto& r : rows)
    os << fmt17(r.h) << "," << fmt17(r.sigma_h) << "," << fmt17(r.error) << ","
       << fmt17(r.observed_order) << "\n";
  return os.str();
}

Json ConvergenceResult::to_json(const RunConfig& config) const {
  Json j;
  j["config"] = config.to_json();
  j["sigma_exact"] = sigma_exact;
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["checks"] = check_log;
  Json rows_j = Json::array();
  for (const auto& r : rows)
    rows_j.push_back({{"h", r.h},
                      {"sigma_h", r.sigma_h},
                      {"error", r.error},
                      {"observed_order", r.observed_order}});
  j["rows"] = rows_j;
  return j;
}

DerivResult run_deriv_check(const RunConfig& config) {
  const double tmax = admissible_range(config.outer, config.hole_r, config.w);
  const double d1 =
      config.deriv_delta_first > 0.0 ? config.deriv_delta_first : 1e-3 * tmax;
  const double d2 =
      config.deriv_delta_second > 0.0 ? config.deriv_delta_second : 5e-3 * tmax;

  DerivResult result;
  result.records.resize(config.deriv_t_values.size());
  parallel_for(static_cast<int>(config.deriv_t_values.size()), config.workers,
               [&](int k) {
    DerivRecord& rec = result.records[k];
    const double t = config.deriv_t_values[k];
    try {
      AnnulusProblem prob{config.outer, HoleSpec{config.hole_r, config.w, t}};
      const MeshLayout layout = choose_layout(prob, config.h);
      InstanceSolve s = solve_instance(prob, config.h, layout, config.tol);
      rec.report = second_shape_derivative(s.flux, config.w, config.hole_r);
      rec.report.sigma = s.pair.sigma;
      rec.report.h = config.h;
      rec.report.t = t;
      rec.report.delta = d2;

      if (t > 0.0) {
        const FiniteDifferences fd1 =
            finite_difference_derivatives(prob, config.h, d1, config.tol);
        const FiniteDifferences fd2 =
            finite_difference_derivatives(prob, config.h, d2, config.tol);
        rec.report.fd_first = fd1.fd_first;
        rec.report.fd_second = fd2.fd_second;
        rec.first_agreement = std::abs(rec.report.sigma_prime - fd1.fd_first) /
                              std::abs(fd1.fd_first);
        rec.second_agreement = std::abs(rec.report.sigma_second - fd2.fd_second) /
                               std::abs(fd2.fd_second);
        rec.first_ok = rec.first_agreement <= 0.02;
        rec.second_ok = rec.second_agreement <= 0.05;
      } else {
        // symmetric instance: sigma(t) is even in t, the centered first
        // difference vanishes identically; second difference is one-sided
        AnnulusProblem shifted = prob;
        shifted.hole.t = d2;
        const Mesh m0 = build_mesh(prob, config.h, layout);
        const Mesh md = build_mesh(shifted, config.h, layout);
        SolveOptions opts;
        opts.tol = config.tol;
        const double s0 = solve_smallest(assemble(m0), opts).sigma;
        const double sd = solve_smallest(assemble(md), opts).sigma;
        rec.report.fd_first = 0.0;
        rec.report.fd_second = 2.0 * (sd - s0) / (d2 * d2);
        rec.first_agreement = 0.0;
        rec.second_agreement = std::abs(rec.report.sigma_second - rec.report.fd_second) /
                               std::abs(rec.report.fd_second);
        rec.first_ok = std::abs(rec.report.sigma_prime) <= 0.1 * config.h;
        rec.second_ok = rec.second_agreement <= 0.05;
      }
      rec.signs_ok = rec.report.term_I <= 0.0 && rec.report.term_II < 0.0 &&
                     rec.report.term_III_extra <= 0.0 &&
                     rec.report.sigma_second < 0.0 &&
                     (t == 0.0 || rec.report.sigma_prime < 0.0);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure = e.what();
    }
  });

  bool ok = true;
  for (const auto& rec : result.records) {
    if (rec.failed) {
      ok = false;
      result.check_log.push_back("FAIL t=" + fmt17(rec.report.t) + ": " + rec.failure);
      continue;
    }
    std::ostringstream line;
    line << (rec.first_ok && rec.second_ok && rec.signs_ok ? "PASS" : "FAIL")
         << " t=" << rec.report.t << " first_agreement=" << rec.first_agreement
         << " second_agreement=" << rec.second_agreement
         << " signs=" << (rec.signs_ok ? "ok" : "violated");
    result.check_log.push_back(line.str());
    ok = ok && rec.first_ok && rec.second_ok && rec.signs_ok;
  }
  result.pass = ok;
  return result;
}

std::string DerivResult::to_csv() const {
  std::ostringstream os;
  os << "t,sigma,sigma_prime,sigma_second,term_I,term_II,term_III_extra,"
        "fd_first,fd_second,first_agreement,second_agreement,h,delta\n";
  for (const auto& r : records) {
    const auto& p = r.report;
    os << fmt17(p.t) << "," << fmt17(p.sigma) << "," << fmt17(p.sigma_prime)
       << "," << fmt17(p.sigma_second) << "," << fmt17(p.term_I) << ","
       << fmt17(p.term_II) << "," << fmt17(p.term_III_extra) << ","
       << fmt17(p.fd_first) << "," << fmt17(p.fd_second) << ","
       << fmt17(r.first_agreement) << "," << fmt17(r.second_agreement) << ","
       << fmt17(p.h) << "," << fmt17(p.delta) << "\n";
  }
  return os.str();
}

Json DerivResult::to_json(const RunConfig& config) const {
  Json j;
  j["config"] = config.to_json();
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["checks"] = check_log;
  Json rows = Json::array();
  for (const auto& r : records) {
    const auto& p = r.report;
    Json row{{"t", p.t},
             {"sigma", p.sigma},
             {"sigma_prime", p.sigma_prime},
             {"term_I", p.term_I},
             {"term_II", p.term_II},
             {"term_III_extra", p.term_III_extra},
             {"sigma_second", p.sigma_second},
             {"fd_first", p.fd_first},
             {"fd_second", p.fd_second},
             {"h", p.h},
             {"delta", p.delta},
             {"first_agreement", r.first_agreement},
             {"second_agreement", r.second_agreement}};
    if (r.failed) row["failure"] = r.failure;
    rows.push_back(row);
  }
  j["records"] = rows;
  return j;
}

SolveResult run_solve(const RunConfig& config) {
  AnnulusProblem prob{config.outer, HoleSpec{config.hole_r, config.w, config.t}};
  const MeshLayout layout = choose_layout(prob, config.h);
  InstanceSolve s = solve_instance(prob, config.h, layout, config.tol);

  SolveResult out;
  out.sigma = s.pair.sigma;
  out.sigma2 = s.second.sigma;
  out.gap = s.second.sigma / s.pair.sigma;
  out.residual = s.pair.residual;
  out.iterations = s.pair.iterations;
  out.nodes = s.mesh.node_count();
  out.layout = layout;
  if (config.outer.kind() == OuterDomain::Kind::Disk)
    out.bounds = eccentric_bounds(config.outer.disk_radius(), config.hole_r);

  if (!config.export_mesh.empty()) {
    std::ofstream f(config.export_mesh);
    write_mesh(f, s.mesh);
  }
  if (!config.export_matrix.empty()) {
    std::ofstream f(config.export_matrix);
    write_symmetric_matrix(f, s.system.K);
  }
  if (!config.export_eigen.empty()) {
    std::ofstream f(config.export_eigen);
    write_eigenpair(f, s.pair);
  }
  return out;
}

Json SolveResult::to_json(const RunConfig& config) const {
  Json j;
  j["config"] = config.to_json();
  j["sigma"] = sigma;
  j["sigma2"] = sigma2;
  j["gap"] = gap;
  j["residual"] = residual;
  j["iterations"] = iterations;
  j["nodes"] = nodes;
  j["layout"] = {{"n_theta", layout.n_theta}, {"n_radial", layout.n_radial}};
  if (bounds) {
    j["bounds"] = {{"lower", bounds->lower}, {"upper", bounds->upper}};
  }
  return j;
}

} // namespace steklov
