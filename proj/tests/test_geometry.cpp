// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "steklov/geometry.hpp"

using namespace steklov;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("outer domain factories and validation") {
  const auto d = OuterDomain::disk(2.0);
  CHECK(d.rho(0.3) == doctest::Approx(2.0));
  CHECK(d.rho(0.3 + kPi) == doctest::Approx(d.rho(0.3)));

  const auto e = OuterDomain::ellipse(2.0, 1.0);
  CHECK(e.rho(0.0) == doctest::Approx(2.0));
  CHECK(e.rho(kPi / 2) == doctest::Approx(1.0));
  for (double th : {0.1, 1.0, 2.5})
    CHECK(e.rho(th + kPi) == doctest::Approx(e.rho(th)).epsilon(1e-13));

  const auto p = OuterDomain::radial_profile(1.0, {{2, 0.2}});
  CHECK(p.rho(0.0) == doctest::Approx(1.2));
  CHECK(p.rho(kPi / 2) == doctest::Approx(0.8));
  for (double th : {0.0, 0.7, 1.9})
    CHECK(p.rho(th + kPi) == doctest::Approx(p.rho(th)).epsilon(1e-13));

  CHECK_THROWS_AS(OuterDomain::radial_profile(1.0, {{3, 0.2}}), AsymmetricProfile);
  CHECK_THROWS_AS(OuterDomain::radial_profile(1.0, {}, {{5, 0.1}}), AsymmetricProfile);
  CHECK_THROWS_AS(OuterDomain::disk(-1.0), BadParameter);
  CHECK_THROWS_AS(OuterDomain::ellipse(1.0, 2.0), BadParameter);
  // profile dipping below zero somewhere on the dense sample
  CHECK_THROWS_AS(OuterDomain::radial_profile(1.0, {{2, 1.5}}), NonPositiveRadius);
}

TEST_CASE("admissible range: disk is exact, ellipse matches dense sampling") {
  const auto d = OuterDomain::disk(2.0);
  const double tmax = admissible_range(d, 0.5, Vec2(1.0, 0.0));
  CHECK(std::abs(tmax - 1.5) < 1e-10);
  const double tmax2 = admissible_range(d, 0.5, Vec2(0.3, -0.8));
  CHECK(std::abs(tmax2 - 1.5) < 1e-10);

  const auto e = OuterDomain::ellipse(2.0, 1.0);
  const double te = admissible_range(e, 0.25, Vec2(1.0, 0.0));
  // vertex curvature radius is b^2/a = 0.5, so the closest point for the
  // relevant offsets is the vertex itself and t_max = a - r exactly
  CHECK(te == doctest::Approx(1.75).epsilon(1e-8));
  const double te_dense = oracles::ellipse_tmax_dense(2.0, 1.0, 0.25, 1.0, 0.0);
  CHECK(te == doctest::Approx(te_dense).epsilon(1e-6));

  const double tb = admissible_range(e, 0.3, Vec2(0.0, 1.0));
  CHECK(tb == doctest::Approx(0.7).epsilon(1e-8));

  CHECK_THROWS_AS(admissible_range(e, 1.01, Vec2(1.0, 0.0)), HoleTooLarge);
}

TEST_CASE("admissible range shrinks strictly as the hole grows") {
  const auto e = OuterDomain::ellipse(2.0, 1.0);
  double prev = 1e300;
  for (double r : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9}) {
    const double tm = admissible_range(e, r, Vec2(1.0, 0.0));
    CHECK(tm < prev);
    prev = tm;
  }
}

TEST_CASE("mesh: invariants on a concentric disk shell") {
  const auto prob = make_problem(OuterDomain::disk(2.0), 1.0, Vec2(1.0, 0.0), 0.0);
  const Mesh mesh = build_mesh(prob, 0.1);

  CHECK(mesh.conformity_audit());
  CHECK(mesh.max_inner_residual < 1e-12);
  CHECK(mesh.max_outer_residual < 1e-12);
  for (int k = 0; k < static_cast<int>(mesh.triangles.size()); ++k)
    CHECK(mesh.triangle_area(k) > 0.0);
  CHECK(mesh.layout.n_theta % 2 == 0);

  // node set is centrally symmetric at t = 0
  std::set<std::pair<long long, long long>> keys;
  const auto key = [](const Vec2& p) {
    return std::make_pair(static_cast<long long>(std::llround(p.x() * 1e12)),
                          static_cast<long long>(std::llround(p.y() * 1e12)));
  };
  for (const auto& p : mesh.nodes) keys.insert(key(p));
  for (const auto& p : mesh.nodes) {
    const Vec2 q = -p;
    CHECK(keys.count(key(q)) == 1);
  }
}

TEST_CASE("mesh: eccentric quality and degenerate gap") {
  const auto prob = make_problem(OuterDomain::disk(2.0), 1.0, Vec2(1.0, 0.0), 0.9);
  const Mesh mesh = build_mesh(prob, 0.1);
  CHECK(mesh.conformity_audit());
  CHECK(mesh.min_quality() > 0.2);

  auto tight = make_problem(OuterDomain::disk(2.0), 1.0, Vec2(1.0, 0.0), 0.999);
  CHECK_THROWS_AS(build_mesh(tight, 0.5), DegenerateGeometry);
}

TEST_CASE("mesh: halving h at least quadruples the triangle count") {
  const auto prob = make_problem(OuterDomain::disk(2.0), 0.5, Vec2(1.0, 0.0), 0.6);
  size_t prev = 0;
  for (double h : {0.4, 0.2, 0.1, 0.05}) {
    const Mesh mesh = build_mesh(prob, h);
    CHECK(mesh.max_inner_residual < 1e-12);
    CHECK(mesh.max_outer_residual < 1e-12);
    if (prev > 0) CHECK(mesh.triangles.size() >= 4 * prev);
    prev = mesh.triangles.size();
  }
}

TEST_CASE("mesh: edge lengths bounded by the target resolution") {
  for (double h : {0.2, 0.1}) {
    const auto prob = make_problem(OuterDomain::ellipse(2.0, 1.0), 0.3,
                                   Vec2(1.0, 0.0), 0.8);
    const Mesh mesh = build_mesh(prob, h);
    CHECK(mesh.max_edge_length() <= h * 1.0001);
  }
}
