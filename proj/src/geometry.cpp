// SPDX-License-Identifier: Apache-2.0
#include "steklov/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace steklov {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kProfileSamples = 4096;

// Golden-section minimization of f on [lo, hi].
template <typename F>
double golden_min(F&& f, double lo, double hi, int iters = 120) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iters && (b - a) > 1e-15 * (1.0 + std::abs(a)); ++k) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Smallest value in {4,5,6,7}*2^k that is >= x (and >= floor_value).
// The grid is closed under doubling, so halving a target spacing exactly
// doubles the returned count.
int quantize_count(double x, int floor_value) {
  x = std::max(x, static_cast<double>(floor_value));
  for (int k = 0; k < 28; ++k) {
    for (int m = 4; m <= 7; ++m) {
      const double v = static_cast<double>(m) * std::ldexp(1.0, k);
      if (v >= x) return static_cast<int>(v);
    }
  }
  throw BadParameter("mesh resolution out of range");
}

} // namespace

OuterDomain OuterDomain::disk(double R) {
  if (!(R > 0.0)) throw BadParameter("disk radius must be positive");
  OuterDomain d;
  d.kind_ = Kind::Disk;
  d.R_ = R;
  d.finalize();
  return d;
}

OuterDomain OuterDomain::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw BadParameter("ellipse semi-axes must be positive");
  if (a < b) throw BadParameter("ellipse requires a >= b");
  OuterDomain d;
  d.kind_ = Kind::Ellipse;
  d.a_ = a;
  d.b_ = b;
  d.finalize();
  return d;
}

OuterDomain OuterDomain::radial_profile(double base,
                                        std::vector<std::pair<int, double>> cos_terms,
                                        std::vector<std::pair<int, double>> sin_terms) {
  for (const auto& [m, coef] : cos_terms) {
    (void)coef;
    if (m <= 0 || m % 2 != 0)
      throw AsymmetricProfile("radial profile admits only even harmonic indices");
  }
  for (const auto& [m, coef] : sin_terms) {
    (void)coef;
    if (m <= 0 || m % 2 != 0)
      throw AsymmetricProfile("radial profile admits only even harmonic indices");
  }
  OuterDomain d;
  d.kind_ = Kind::RadialProfile;
  d.base_ = base;
  d.cos_terms_ = std::move(cos_terms);
  d.sin_terms_ = std::move(sin_terms);
  d.finalize();
  return d;
}

double OuterDomain::rho(double theta) const {
  switch (kind_) {
    case Kind::Disk:
      return R_;
    case Kind::Ellipse: {
      const double c = std::cos(theta), s = std::sin(theta);
      return a_ * b_ / std::sqrt(b_ * b_ * c * c + a_ * a_ * s * s);
    }
    case Kind::RadialProfile: {
      double v = base_;
      for (const auto& [m, coef] : cos_terms_) v += coef * std::cos(m * theta);
      for (const auto& [m, coef] : sin_terms_) v += coef * std::sin(m * theta);
      return v;
    }
  }
  return 0.0;
}

double OuterDomain::drho(double theta) const {
  switch (kind_) {
    case Kind::Disk:
      return 0.0;
    case Kind::Ellipse: {
      const double c = std::cos(theta), s = std::sin(theta);
      const double q = b_ * b_ * c * c + a_ * a_ * s * s;
      // d/dtheta of a b q^{-1/2}
      const double dq = 2.0 * (a_ * a_ - b_ * b_) * s * c;
      return -0.5 * a_ * b_ * dq / (q * std::sqrt(q));
    }
    case Kind::RadialProfile: {
      double v = 0.0;
      for (const auto& [m, coef] : cos_terms_) v -= coef * m * std::sin(m * theta);
      for (const auto& [m, coef] : sin_terms_) v += coef * m * std::cos(m * theta);
      return v;
    }
  }
  return 0.0;
}

Vec2 OuterDomain::boundary_point(double theta) const {
  const double r = rho(theta);
  return Vec2(r * std::cos(theta), r * std::sin(theta));
}

void OuterDomain::finalize() {
  min_rho_ = std::numeric_limits<double>::infinity();
  max_rho_ = 0.0;
  double len = 0.0;
  double prev = std::hypot(rho(0.0), drho(0.0));
  for (int k = 0; k < kProfileSamples; ++k) {
    const double th = kTwoPi * k / kProfileSamples;
    const double r = rho(th);
    min_rho_ = std::min(min_rho_, r);
    max_rho_ = std::max(max_rho_, r);
    const double next = std::hypot(rho(th + kTwoPi / kProfileSamples),
                                   drho(th + kTwoPi / kProfileSamples));
    const double speed = std::hypot(r, drho(th));
    len += 0.5 * (speed + next) * (kTwoPi / kProfileSamples);
    prev = next;
  }
  (void)prev;
  curve_length_ = len;
  if (!(min_rho_ > 0.0))
    throw NonPositiveRadius("outer boundary radius must stay positive");
}

double OuterDomain::distance_to_boundary(const Vec2& p) const {
  const auto dist2 = [&](double th) {
    const Vec2 q = boundary_point(th);
    return (q - p).squaredNorm();
  };
  // coarse scan, then refine around every local minimum of the scan
  const int n = kProfileSamples;
  std::vector<double> d(n);
  for (int k = 0; k < n; ++k) d[k] = dist2(kTwoPi * k / n);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double dm = d[(k + n - 1) % n], dp = d[(k + 1) % n];
    if (d[k] <= dm && d[k] <= dp) {
      const double lo = kTwoPi * (k - 1) / n, hi = kTwoPi * (k + 1) / n;
      const double th = golden_min(dist2, lo, hi);
      best = std::min(best, dist2(th));
    }
  }
  return std::sqrt(best);
}

double OuterDomain::ray_to_boundary(const Vec2& from, const Vec2& dir) const {
  const auto level = [&](double tau) {
    const Vec2 q = from + tau * dir;
    return q.norm() - rho(std::atan2(q.y(), q.x()));
  };
  double lo = 0.0;
  if (!(level(lo) < 0.0))
    throw BadParameter("ray origin must lie inside the outer domain");
  double hi = from.norm() + max_rho_ + 1.0;
  if (!(level(hi) > 0.0)) hi *= 4.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (level(mid) < 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-16 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

AnnulusProblem make_problem(OuterDomain outer, double r, Vec2 w, double t) {
  if (!(r > 0.0)) throw BadParameter("hole radius must be positive");
  const double wn = w.norm();
  if (!(wn > 0.0)) throw BadParameter("direction must be nonzero");
  w /= wn;
  if (t < 0.0) throw BadParameter("offset must be nonnegative");
  const double tmax = admissible_range(outer, r, w);
  if (!(t < tmax))
    throw BadParameter("offset leaves the admissible range [0, t_max)");
  return AnnulusProblem{std::move(outer), HoleSpec{r, w, t}};
}

double admissible_range(const OuterDomain& outer, double r, const Vec2& w) {
  const Vec2 dir = w.normalized();
  if (!(outer.distance_to_boundary(Vec2::Zero()) > r))
    throw HoleTooLarge("hole does not fit inside the outer domain at the center");
  const auto gap = [&](double t) {
    return outer.distance_to_boundary(t * dir) - r;
  };
  // gap(0) > 0; the boundary point along the ray gives gap < 0.
  double lo = 0.0;
  double hi = outer.ray_to_boundary(Vec2::Zero(), dir);
  for (int k = 0; k < 120; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0) lo = mid; else hi = mid;
    if (hi - lo < 1e-14 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

MeshLayout choose_layout(const AnnulusProblem& problem, double h) {
  if (!(h > 0.0)) throw BadParameter("target edge length must be positive");
  // Grid spacings are kept below h/sqrt(2) in both directions so that every
  // triangle edge, the split diagonals included, stays below h.
  const double tau = h / std::numbers::sqrt2;
  const Vec2 c = problem.hole.center();
  const double r = problem.hole.r;

  const int n = 1024;
  std::vector<double> ray(n);
  for (int k = 0; k < n; ++k) {
    const double th = kTwoPi * k / n;
    ray[k] = problem.outer.ray_to_boundary(c, Vec2(std::cos(th), std::sin(th)));
  }
  double max_gap = 0.0, max_speed = 0.0;
  for (int k = 0; k < n; ++k) {
    max_gap = std::max(max_gap, ray[k] - r);
    // arc speed of the outer ring seen from the hole center
    const double slope = (ray[(k + 1) % n] - ray[(k + n - 1) % n]) / (2.0 * kTwoPi / n);
    max_speed = std::max(max_speed, std::hypot(ray[k], slope));
  }
  MeshLayout layout;
  layout.n_theta = quantize_count(kTwoPi * max_speed / tau, 16);
  layout.n_radial = quantize_count(max_gap / tau, 2);
  return layout;
}

double Mesh::triangle_area(int tri) const {
  const auto& t = triangles[tri];
  const Vec2 e1 = nodes[t[1]] - nodes[t[0]];
  const Vec2 e2 = nodes[t[2]] - nodes[t[0]];
  return 0.5 * (e1.x() * e2.y() - e1.y() * e2.x());
}

double Mesh::triangle_quality(int tri) const {
  const auto& t = triangles[tri];
  const double a = (nodes[t[1]] - nodes[t[0]]).norm();
  const double b = (nodes[t[2]] - nodes[t[1]]).norm();
  const double c = (nodes[t[0]] - nodes[t[2]]).norm();
  const double area = std::abs(triangle_area(tri));
  if (area <= 0.0) return 0.0;
  const double s = 0.5 * (a + b + c);
  const double r_in = area / s;
  const double r_circ = a * b * c / (4.0 * area);
  return 2.0 * r_in / r_circ;
}

double Mesh::min_quality() const {
  double q = 1.0;
  for (int k = 0; k < static_cast<int>(triangles.size()); ++k)
    q = std::min(q, triangle_quality(k));
  return q;
}

double Mesh::max_edge_length() const {
  double m = 0.0;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e)
      m = std::max(m, (nodes[t[e]] - nodes[t[(e + 1) % 3]]).norm());
  return m;
}

bool Mesh::conformity_audit() const {
  // count triangle incidences per undirected edge
  std::vector<std::pair<long long, int>> counts;
  counts.reserve(triangles.size() * 3);
  const auto key = [this](int i, int j) {
    if (i > j) std::swap(i, j);
    return static_cast<long long>(i) * node_count() + j;
  };
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e)
      counts.emplace_back(key(t[e], t[(e + 1) % 3]), 1);
  std::sort(counts.begin(), counts.end());
  std::vector<std::pair<long long, int>> merged;
  for (const auto& [k, c] : counts) {
    if (!merged.empty() && merged.back().first == k)
      merged.back().second += c;
    else
      merged.emplace_back(k, c);
  }
  std::vector<long long> boundary;
  for (const auto& [k, c] : merged) {
    if (c == 1) boundary.push_back(k);
    else if (c != 2) return false;
  }
  std::vector<long long> tagged;
  for (const auto& e : inner_edges) tagged.push_back(key(e[0], e[1]));
  for (const auto& e : outer_edges) tagged.push_back(key(e[0], e[1]));
  std::sort(tagged.begin(), tagged.end());
  return tagged == boundary;
}

Mesh build_mesh(const AnnulusProblem& problem, double h,
                std::optional<MeshLayout> layout_opt) {
  const MeshLayout layout = layout_opt ? *layout_opt : choose_layout(problem, h);
  const int nt = layout.n_theta, nr = layout.n_radial;
  if (nt < 3 || nr < 1) throw BadParameter("layout too coarse");

  const Vec2 c = problem.hole.center();
  const double r = problem.hole.r;

  Mesh mesh;
  mesh.h = h;
  mesh.layout = layout;
  mesh.hole_center = c;
  mesh.hole_radius = r;
  mesh.nodes.resize(static_cast<size_t>(nt) * (nr + 1));

  std::vector<double> outer_dist(nt);
  for (int j = 0; j < nt; ++j) {
    const double th = kTwoPi * j / nt;
    const Vec2 dir(std::cos(th), std::sin(th));
    outer_dist[j] = problem.outer.ray_to_boundary(c, dir);
    for (int i = 0; i <= nr; ++i) {
      const double s = static_cast<double>(i) / nr;
      const double rad = r + s * (outer_dist[j] - r);
      mesh.nodes[static_cast<size_t>(i) * nt + j] = c + rad * dir;
    }
  }

  mesh.triangles.reserve(static_cast<size_t>(nt) * nr * 2);
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const int jp = (j + 1) % nt;
      const int v00 = i * nt + j, v10 = i * nt + jp;
      const int v01 = (i + 1) * nt + j, v11 = (i + 1) * nt + jp;
      // the (theta, s) chart is clockwise in the plane; order accordingly.
      // Split along the shorter diagonal: slanted quads otherwise produce
      // diagonals longer than the grid spacing bound.
      const double d1 = (mesh.nodes[v00] - mesh.nodes[v11]).norm();
      const double d2 = (mesh.nodes[v10] - mesh.nodes[v01]).norm();
      if (d1 <= d2) {
        mesh.triangles.push_back({v00, v11, v10});
        mesh.triangles.push_back({v00, v01, v11});
      } else {
        mesh.triangles.push_back({v00, v01, v10});
        mesh.triangles.push_back({v01, v11, v10});
      }
    }
  }

  mesh.inner_ring.resize(nt);
  for (int j = 0; j < nt; ++j) {
    mesh.inner_ring[j] = j;
    mesh.inner_edges.push_back({j, (j + 1) % nt});
    mesh.outer_edges.push_back({nr * nt + j, nr * nt + (j + 1) % nt});
  }

  // placement residuals
  double res_in = 0.0, res_out = 0.0;
  for (int j = 0; j < nt; ++j) {
    const Vec2& p = mesh.nodes[j];
    res_in = std::max(res_in, std::abs((p - c).norm() - r) / r);
    const Vec2& q = mesh.nodes[static_cast<size_t>(nr) * nt + j];
    const double want = problem.outer.rho(std::atan2(q.y(), q.x()));
    res_out = std::max(res_out, std::abs(q.norm() - want) / want);
  }
  mesh.max_inner_residual = res_in;
  mesh.max_outer_residual = res_out;

  double min_q = 1.0;
  for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k) {
    if (!(mesh.triangle_area(k) > 0.0))
      throw DegenerateGeometry("transfinite grid folded: nonpositive triangle area");
    min_q = std::min(min_q, mesh.triangle_quality(k));
  }
  if (min_q < 0.01)
    throw DegenerateGeometry("mesh cannot resolve the gap at this resolution");
  return mesh;
}

} // namespace steklov
