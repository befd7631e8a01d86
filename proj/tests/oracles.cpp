#include <array>
// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace oracles {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double disk_dirichlet_energy(const std::function<double(double)>& g,
                             double radius, int n_theta, int n_rad) {
  // nodes: center (id 0), then rings i = 1..n_rad of n_theta nodes each
  const int n_nodes = 1 + n_rad * n_theta;
  std::vector<double> xs(n_nodes), ys(n_nodes);
  xs[0] = ys[0] = 0.0;
  for (int i = 1; i <= n_rad; ++i) {
    const double rr = radius * i / n_rad;
    for (int j = 0; j < n_theta; ++j) {
      const double th = kTwoPi * j / n_theta;
      xs[1 + (i - 1) * n_theta + j] = rr * std::cos(th);
      ys[1 + (i - 1) * n_theta + j] = rr * std::sin(th);
    }
  }
  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j < n_theta; ++j)
    tris.push_back({0, 1 + j, 1 + (j + 1) % n_theta});
  for (int i = 1; i < n_rad; ++i) {
    for (int j = 0; j < n_theta; ++j) {
      const int jp = (j + 1) % n_theta;
      const int a = 1 + (i - 1) * n_theta + j, b = 1 + (i - 1) * n_theta + jp;
      const int c = 1 + i * n_theta + j, d = 1 + i * n_theta + jp;
      tris.push_back({a, b, d});
      tris.push_back({a, d, c});
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  for (const auto& t : tris) {
    const double x0 = xs[t[0]], y0 = ys[t[0]];
    const double x1 = xs[t[1]], y1 = ys[t[1]];
    const double x2 = xs[t[2]], y2 = ys[t[2]];
    const double twoA = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
    const double gx[3] = {y1 - y2, y2 - y0, y0 - y1};
    const double gy[3] = {x2 - x1, x0 - x2, x1 - x0};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        trip.emplace_back(t[a], t[b],
                          (gx[a] * gx[b] + gy[a] * gy[b]) / (2.0 * twoA));
  }
  Eigen::SparseMatrix<double> K(n_nodes, n_nodes);
  K.setFromTriplets(trip.begin(), trip.end());

  // boundary = last ring; interior = the rest
  const int first_bnd = 1 + (n_rad - 1) * n_theta;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n_nodes);
  for (int j = 0; j < n_theta; ++j)
    u[first_bnd + j] = g(kTwoPi * j / n_theta);

  std::vector<int> interior;
  for (int i = 0; i < first_bnd; ++i) interior.push_back(i);
  const int ni = static_cast<int>(interior.size());

  std::vector<Eigen::Triplet<double>> kint;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ni);
  const Eigen::VectorXd ku = K * u;
  for (int col = 0; col < ni; ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, interior[col]); it;
         ++it) {
      if (it.row() < first_bnd)
        kint.emplace_back(static_cast<int>(it.row()), col, it.value());
    }
    rhs[col] = -ku[interior[col]];
  }
  Eigen::SparseMatrix<double> Kii(ni, ni);
  Kii.setFromTriplets(kint.begin(), kint.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(Kii);
  const Eigen::VectorXd ui = chol.solve(rhs);
  for (int i = 0; i < ni; ++i) u[interior[i]] = ui[i];
  return u.dot(K * u);
}

double concentric_mode_sigma(double R, double r, int m) {
  if (m == 0) return 1.0 / (R * std::log(R / r));
  const double p = std::pow(R, m), q = std::pow(r, 2 * m) / std::pow(R, m);
  const double u = p - q;
  const double du = m * (p + q) / R;
  return du / u;
}

double ellipse_tmax_dense(double a, double b, double r, double wx, double wy,
                          int n_samples) {
  const double wn = std::hypot(wx, wy);
  wx /= wn;
  wy /= wn;
  const auto dist = [&](double t) {
    const double px = t * wx, py = t * wy;
    double best = 1e300;
    for (int k = 0; k < n_samples; ++k) {
      const double th = kTwoPi * k / n_samples;
      const double dx = a * std::cos(th) - px, dy = b * std::sin(th) - py;
      best = std::min(best, dx * dx + dy * dy);
    }
    return std::sqrt(best);
  };
  double lo = 0.0, hi = std::max(a, b);
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (dist(mid) > r) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

const EccentricReference* disk_R2_r05_reference(double t) {
  // spectral collocation references, disk R=2, hole r=0.5, w=e1
  static const EccentricReference table[] = {
      {0.00, 0.3606737602, 0.0, -0.57975424},
      {0.30, 0.3390114321, -0.12211043, -0.17846755},
      {0.75, 0.2780944421, -0.13359723, 0.04018388},
      {1.10, 0.2340477194, -0.11795711, 0.04374379},
      {1.35, 0.2058541021, -0.10792932, 0.03549925},
      {1.47, 0.1931426102, -0.10406953, 0.02851819},
  };
  for (const auto& row : table)
    if (std::abs(row.t - t) < 1e-12) return &row;
  return nullptr;
}

} // namespace oracles
