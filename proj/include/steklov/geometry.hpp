// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_GEOMETRY_HPP
#define STEKLOV_GEOMETRY_HPP

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "steklov/errors.hpp"

namespace steklov {

using Vec2 = Eigen::Vector2d;

/// Centrally symmetric outer boundary, given as a positive radial graph
/// rho(theta) about the origin.  Three kinds: disk, ellipse and a
/// trigonometric radial profile restricted to even harmonics (which is what
/// makes rho(theta+pi) = rho(theta) hold identically).
class OuterDomain {
public:
  enum class Kind { Disk, Ellipse, RadialProfile };

  static OuterDomain disk(double R);
  static OuterDomain ellipse(double a, double b);
  /// rho(theta) = base + sum_m cos_terms[m] cos(m theta) + sin_terms[m] sin(m theta);
  /// terms are (harmonic index, coefficient) pairs, every index must be even.
  static OuterDomain radial_profile(double base,
                                    std::vector<std::pair<int, double>> cos_terms,
                                    std::vector<std::pair<int, double>> sin_terms = {});

  Kind kind() const { return kind_; }

  double rho(double theta) const;
  double drho(double theta) const;        ///< d rho / d theta
  Vec2 boundary_point(double theta) const;

  double min_rho() const { return min_rho_; }
  double max_rho() const { return max_rho_; }
  /// Arc length of the boundary curve.
  double curve_length() const { return curve_length_; }

  /// Euclidean distance from p (interior) to the boundary curve.
  double distance_to_boundary(const Vec2& p) const;
  /// Distance tau > 0 with  origin_offset + tau*dir  on the boundary
  /// (dir a unit vector; the start point must lie inside).
  double ray_to_boundary(const Vec2& from, const Vec2& dir) const;

  // parameters, for reporting
  double disk_radius() const { return R_; }
  double ellipse_a() const { return a_; }
  double ellipse_b() const { return b_; }

private:
  OuterDomain() = default;
  void finalize();  // validates positivity, caches extrema and curve length

  Kind kind_ = Kind::Disk;
  double R_ = 0.0, a_ = 0.0, b_ = 0.0;
  double base_ = 0.0;
  std::vector<std::pair<int, double>> cos_terms_, sin_terms_;
  double min_rho_ = 0.0, max_rho_ = 0.0, curve_length_ = 0.0;
};

/// The movable hole: radius r, unit direction w, offset t >= 0.
struct HoleSpec {
  double r = 0.0;
  Vec2 w = Vec2(1.0, 0.0);
  double t = 0.0;

  Vec2 center() const { return t * w; }
};

/// One problem instance Omega(t) = Omega_0 minus the closed hole.
struct AnnulusProblem {
  OuterDomain outer;
  HoleSpec hole;
};

/// Validates the hole against the outer domain and returns the instance.
AnnulusProblem make_problem(OuterDomain outer, double r, Vec2 w, double t);

/// Largest admissible offset: sup{ t >= 0 : dist(t*w, boundary) > r }.
/// Throws HoleTooLarge when even t = 0 is inadmissible.
double admissible_range(const OuterDomain& outer, double r, const Vec2& w);

/// Default safety factor for sweeps: offsets are kept <= 0.98 * t_max.
inline constexpr double kOffsetSafetyFactor = 0.98;

/// Angular/radial subdivision counts of the structured annular grid.
struct MeshLayout {
  int n_theta = 0;
  int n_radial = 0;
};

/// Boundary-fitted triangulation of an annular instance.  Nodes live on
/// rings: ring i (0..n_radial) at radial fraction i/n_radial between the
/// hole circle and the outer curve, along rays anchored at the hole center.
struct Mesh {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;     // positively oriented
  std::vector<std::array<int, 2>> inner_edges;   // on the hole circle
  std::vector<std::array<int, 2>> outer_edges;   // on the outer curve
  double h = 0.0;                                // requested resolution
  MeshLayout layout;
  Vec2 hole_center = Vec2::Zero();
  double hole_radius = 0.0;
  double max_inner_residual = 0.0;  // placement residual, relative
  double max_outer_residual = 0.0;

  /// Node ids of ring 0 in angular order (angle 2*pi*j/n_theta about the
  /// hole center).
  std::vector<int> inner_ring;

  int node_count() const { return static_cast<int>(nodes.size()); }
  double triangle_area(int tri) const;
  /// 2 * inradius / circumradius of a triangle, in (0, 1].
  double triangle_quality(int tri) const;
  double min_quality() const;
  double max_edge_length() const;

  /// Edge-to-triangle incidence audit: every interior edge shared by exactly
  /// two triangles, every tagged boundary edge by exactly one, and the tagged
  /// edges are precisely the boundary edges.  Returns true when conforming.
  bool conformity_audit() const;
};

/// Pick subdivision counts for a target edge length h.  Counts are quantized
/// upward to {4,5,6,7}*2^k so halving h exactly doubles both counts.
MeshLayout choose_layout(const AnnulusProblem& problem, double h);

/// Build the triangulation.  A layout may be supplied to force the same grid
/// across nearby instances (finite-difference stencils, sweeps); otherwise
/// it is chosen from h.  Throws DegenerateGeometry when the grid folds or
/// cannot resolve a thin gap (min quality < 0.01).
Mesh build_mesh(const AnnulusProblem& problem, double h,
                std::optional<MeshLayout> layout = std::nullopt);

} // namespace steklov

#endif
