// SPDX-License-Identifier: Apache-2.0
#include "steklov/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SparseLU>

namespace steklov {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

CircleTrace circle_trace_from_flux(const FluxTrace& flux, const Vec2& w) {
  CircleTrace trace;
  trace.radius = flux.radius;
  trace.theta.reserve(flux.samples.size());
  trace.value.reserve(flux.samples.size());
  for (const auto& s : flux.samples) {
    trace.theta.push_back(s.theta);
    trace.value.push_back(s.grad_mag * s.normal.dot(w));
  }
  return trace;
}

FourierSeries fourier_analyze(const CircleTrace& trace) {
  const int n = trace.size();
  if (n < 16) throw TooFewSamples("circle trace needs at least 16 samples");
  // periodic trapezoid weights from the angular spacing
  std::vector<double> wq(n);
  for (int k = 0; k < n; ++k) {
    const double next = (k + 1 < n) ? trace.theta[k + 1] : trace.theta[0] + kTwoPi;
    const double prev = (k > 0) ? trace.theta[k - 1] : trace.theta[n - 1] - kTwoPi;
    wq[k] = 0.5 * (next - prev);
  }
  const int nmax = n / 2 - 1;
  FourierSeries f;
  f.cos_coeffs.assign(nmax, 0.0);
  f.sin_coeffs.assign(nmax, 0.0);
  double a0 = 0.0;
  for (int k = 0; k < n; ++k) a0 += trace.value[k] * wq[k];
  f.a0 = a0 / std::numbers::pi;
  for (int m = 1; m <= nmax; ++m) {
    double ac = 0.0, as = 0.0;
    for (int k = 0; k < n; ++k) {
      ac += trace.value[k] * std::cos(m * trace.theta[k]) * wq[k];
      as += trace.value[k] * std::sin(m * trace.theta[k]) * wq[k];
    }
    f.cos_coeffs[m - 1] = ac / std::numbers::pi;
    f.sin_coeffs[m - 1] = as / std::numbers::pi;
  }
  return f;
}

double FourierSeries::evaluate(double theta) const {
  double v = 0.5 * a0;
  for (size_t m = 1; m <= cos_coeffs.size(); ++m)
    v += cos_coeffs[m - 1] * std::cos(m * theta) +
         sin_coeffs[m - 1] * std::sin(m * theta);
  return v;
}

double harmonic_extension_energy(const CircleTrace& trace) {
  const FourierSeries f = fourier_analyze(trace);
  double energy = 0.0;
  for (size_t m = 1; m <= f.cos_coeffs.size(); ++m)
    energy += static_cast<double>(m) *
              (f.cos_coeffs[m - 1] * f.cos_coeffs[m - 1] +
               f.sin_coeffs[m - 1] * f.sin_coeffs[m - 1]);
  return std::numbers::pi * energy;
}

double first_shape_derivative(const FluxTrace& flux, const Vec2& w) {
  if (flux.samples.empty()) throw EmptyTrace("flux trace is empty");
  double acc = 0.0;
  for (const auto& s : flux.samples)
    acc += s.grad_mag * s.grad_mag * w.dot(s.normal) * s.weight;
  return -acc;
}

DerivativeReport second_shape_derivative(const FluxTrace& flux, const Vec2& w,
                                         double r) {
  if (flux.samples.empty()) throw EmptyTrace("flux trace is empty");
  DerivativeReport rep;
  rep.sigma_prime = first_shape_derivative(flux, w);
  rep.term_I = -2.0 * harmonic_extension_energy(circle_trace_from_flux(flux, w));
  double g2 = 0.0, g2wn2 = 0.0;
  for (const auto& s : flux.samples) {
    const double wn = w.dot(s.normal);
    g2 += s.grad_mag * s.grad_mag * s.weight;
    g2wn2 += s.grad_mag * s.grad_mag * wn * wn * s.weight;
  }
  rep.term_II = -g2 / r;
  const int n = 2;  // planar discretization; coefficient (3n-4)/r
  rep.term_III_extra = -static_cast<double>(3 * n - 4) / r * g2wn2;
  rep.sigma_second = rep.term_I + rep.term_II + rep.term_III_extra;
  return rep;
}

DerivativeBvp solve_derivative_bvp(const Mesh& mesh, const SteklovSystem& system,
                                   const EigenPair& pair, double sigma_prime,
                                   const Vec2& w) {
  const FluxTrace flux = recover_inner_flux(mesh, system, pair);
  const int nf = system.n_free();

  // Dirichlet datum on the hole: g = |grad u| <nu, w>
  Eigen::VectorXd g = Eigen::VectorXd::Zero(system.n_full());
  for (const auto& s : flux.samples) g[s.node] = s.grad_mag * s.normal.dot(w);

  // rhs_f = sigma' (M u)_f - (K - sigma M)_fd g_d; M has no hole support
  const Eigen::VectorXd mu_full = system.M_out * pair.u;
  const Eigen::VectorXd kg_full = system.K * g - pair.sigma * (system.M_out * g);
  Eigen::VectorXd rhs(nf);
  for (int k = 0; k < nf; ++k) {
    const int i = system.free_nodes[k];
    rhs[k] = sigma_prime * mu_full[i] - kg_full[i];
  }

  const Eigen::VectorXd uf = system.restrict_free(pair.u);
  const double compat = std::abs(uf.dot(rhs));
  if (!(compat <= 1e-6))
    throw IncompatibleData("derivative problem is not solvable for this sigma'");

  // bordered system [[K - sigma M, M u], [(M u)^T, 0]]
  const Eigen::VectorXd m = system.restrict_free(mu_full);
  std::vector<Eigen::Triplet<double>> trip;
  const SparseMat A = system.K_ff - pair.sigma * system.M_ff;
  for (int col = 0; col < nf; ++col)
    for (SparseMat::InnerIterator it(A, col); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), col, it.value());
  for (int k = 0; k < nf; ++k) {
    if (m[k] != 0.0) {
      trip.emplace_back(k, nf, m[k]);
      trip.emplace_back(nf, k, m[k]);
    }
  }
  SparseMat B(nf + 1, nf + 1);
  B.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<SparseMat> lu(B);
  if (lu.info() != Eigen::Success)
    throw SingularSystem("bordered derivative system failed to factor");
  Eigen::VectorXd rhs_aug(nf + 1);
  rhs_aug.head(nf) = rhs;
  rhs_aug[nf] = 0.0;
  const Eigen::VectorXd sol = lu.solve(rhs_aug);

  DerivativeBvp out;
  out.u_prime = system.extend_by_zero(sol.head(nf));
  for (const auto& s : flux.samples) out.u_prime[s.node] = g[s.node];
  out.compatibility_residual = compat;
  out.boundary_orthogonality = out.u_prime.dot(system.M_out * pair.u);
  return out;
}

double derivative_bvp_inner_energy(const Mesh& mesh, const SteklovSystem& system,
                                   const EigenPair& pair, const DerivativeBvp& bvp,
                                   double sigma_prime) {
  (void)sigma_prime;
  (void)pair;
  // weak flux of u' at the hole nodes; M rows vanish there
  const Eigen::VectorXd reaction = system.K * bvp.u_prime;
  double acc = 0.0;
  for (int node : mesh.inner_ring)
    acc += reaction[node] * bvp.u_prime[node];
  // reaction pairs du'/dnu (annulus normal, at the hole center) with u';
  // flip to the hole-outward normal
  return 2.0 * acc;
}

FiniteDifferences finite_difference_derivatives(const AnnulusProblem& problem,
                                                double h, double delta,
                                                double solver_tol) {
  const double t = problem.hole.t;
  const double tmax = admissible_range(problem.outer, problem.hole.r, problem.hole.w);
  if (t - delta < 0.0 || !(t + delta < tmax))
    throw StepTooLarge("finite-difference stencil leaves the admissible range");

  const MeshLayout layout = choose_layout(problem, h);
  const auto solve_at = [&](double ti, const Eigen::VectorXd* start) {
    AnnulusProblem p = problem;
    p.hole.t = ti;
    const Mesh mesh = build_mesh(p, h, layout);
    const SteklovSystem sys = assemble(mesh);
    SolveOptions opts;
    opts.tol = solver_tol;
    opts.start = start;
    return solve_smallest(sys, opts);
  };

  const EigenPair center = solve_at(t, nullptr);
  const EigenPair minus = solve_at(t - delta, &center.u);
  const EigenPair plus = solve_at(t + delta, &center.u);

  FiniteDifferences fd;
  fd.sigma_minus = minus.sigma;
  fd.sigma_center = center.sigma;
  fd.sigma_plus = plus.sigma;
  fd.fd_first = (plus.sigma - minus.sigma) / (2.0 * delta);
  fd.fd_second = (plus.sigma - 2.0 * center.sigma + minus.sigma) / (delta * delta);
  return fd;
}

double evaluate_on_mesh(const Mesh& mesh, const Eigen::VectorXd& nodal,
                        const Vec2& point) {
  const int nt = mesh.layout.n_theta, nr = mesh.layout.n_radial;
  const Vec2 d = point - mesh.hole_center;
  const double s = d.norm();
  if (s <= mesh.hole_radius) return 0.0;
  double th = std::atan2(d.y(), d.x());
  if (th < 0.0) th += kTwoPi;
  const double jf = th / (kTwoPi / nt);
  const int j = std::min(static_cast<int>(jf), nt - 1);
  const int jp = (j + 1) % nt;
  const double fx = jf - j;
  // radial fraction from the two bounding rays of the wedge
  const auto ray_fraction = [&](int col) {
    const double inner = mesh.hole_radius;
    const double outer = (mesh.nodes[static_cast<size_t>(nr) * nt + col] -
                          mesh.hole_center).norm();
    return (s - inner) / (outer - inner);
  };
  const double sf = (1.0 - fx) * ray_fraction(j) + fx * ray_fraction(jp);
  const double clamped = std::clamp(sf, 0.0, 1.0);
  const double if_ = clamped * nr;
  const int i = std::min(static_cast<int>(if_), nr - 1);
  const double fy = if_ - i;
  // bilinear blend on the structured chart
  const auto at = [&](int ii, int jj) {
    return nodal[static_cast<size_t>(ii) * nt + jj];
  };
  return (1.0 - fx) * (1.0 - fy) * at(i, j) + fx * (1.0 - fy) * at(i, jp) +
         (1.0 - fx) * fy * at(i + 1, j) + fx * fy * at(i + 1, jp);
}

} // namespace steklov
