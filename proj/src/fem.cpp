// SPDX-License-Identifier: Apache-2.0
#include "steklov/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "steklov/eig.hpp"

namespace steklov {

Eigen::VectorXd SteklovSystem::restrict_free(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(n_free());
  for (int k = 0; k < n_free(); ++k) out[k] = full[free_nodes[k]];
  return out;
}

Eigen::VectorXd SteklovSystem::extend_by_zero(const Eigen::VectorXd& free) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_full());
  for (int k = 0; k < n_free(); ++k) out[free_nodes[k]] = free[k];
  return out;
}

SteklovSystem assemble(const Mesh& mesh) {
  if (mesh.inner_edges.empty() || mesh.outer_edges.empty())
    throw EmptyBoundary("mesh must carry tagged inner and outer edges");

  const int n = mesh.node_count();
  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(mesh.triangles.size() * 9);

  for (const auto& tri : mesh.triangles) {
    const Vec2& p0 = mesh.nodes[tri[0]];
    const Vec2& p1 = mesh.nodes[tri[1]];
    const Vec2& p2 = mesh.nodes[tri[2]];
    const double twoA = (p1.x() - p0.x()) * (p2.y() - p0.y()) -
                        (p2.x() - p0.x()) * (p1.y() - p0.y());
    // constant gradients of the hat functions: grad phi_i = rot(e_i)/(2A)
    const Vec2 g0(p1.y() - p2.y(), p2.x() - p1.x());
    const Vec2 g1(p2.y() - p0.y(), p0.x() - p2.x());
    const Vec2 g2(p0.y() - p1.y(), p1.x() - p0.x());
    const Vec2 g[3] = {g0, g1, g2};
    const double scale = 1.0 / (2.0 * twoA);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        kt.emplace_back(tri[a], tri[b], scale * g[a].dot(g[b]));
  }

  for (const auto& e : mesh.outer_edges) {
    const double len = (mesh.nodes[e[0]] - mesh.nodes[e[1]]).norm();
    mt.emplace_back(e[0], e[0], len / 3.0);
    mt.emplace_back(e[1], e[1], len / 3.0);
    mt.emplace_back(e[0], e[1], len / 6.0);
    mt.emplace_back(e[1], e[0], len / 6.0);
  }

  SteklovSystem sys;
  sys.K.resize(n, n);
  sys.K.setFromTriplets(kt.begin(), kt.end());
  sys.M_out.resize(n, n);
  sys.M_out.setFromTriplets(mt.begin(), mt.end());

  std::vector<char> is_dirichlet(n, 0);
  for (const auto& e : mesh.inner_edges) {
    is_dirichlet[e[0]] = 1;
    is_dirichlet[e[1]] = 1;
  }
  sys.full_to_free.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (is_dirichlet[i]) {
      sys.dirichlet_nodes.push_back(i);
    } else {
      sys.full_to_free[i] = static_cast<int>(sys.free_nodes.size());
      sys.free_nodes.push_back(i);
    }
  }

  const int nf = sys.n_free();
  std::vector<Eigen::Triplet<double>> kf, mf;
  for (int col = 0; col < n; ++col) {
    const int fc = sys.full_to_free[col];
    if (fc < 0) continue;
    for (SparseMat::InnerIterator it(sys.K, col); it; ++it) {
      const int fr = sys.full_to_free[static_cast<int>(it.row())];
      if (fr >= 0) kf.emplace_back(fr, fc, it.value());
    }
    for (SparseMat::InnerIterator it(sys.M_out, col); it; ++it) {
      const int fr = sys.full_to_free[static_cast<int>(it.row())];
      if (fr >= 0) mf.emplace_back(fr, fc, it.value());
    }
  }
  sys.K_ff.resize(nf, nf);
  sys.K_ff.setFromTriplets(kf.begin(), kf.end());
  sys.M_ff.resize(nf, nf);
  sys.M_ff.setFromTriplets(mf.begin(), mf.end());
  return sys;
}

double FluxTrace::boundary_length() const {
  double len = 0.0;
  for (const auto& s : samples) len += s.weight;
  return len;
}

bool FluxTrace::sign_constant() const {
  bool has_pos = false, has_neg = false;
  for (const auto& s : samples) {
    if (s.flux > 0.0) has_pos = true;
    if (s.flux < 0.0) has_neg = true;
  }
  return !(has_pos && has_neg);
}

void FluxTrace::audit() const {
  if (!sign_constant())
    throw Error("inner boundary flux changes sign");
}

FluxTrace recover_inner_flux(const Mesh& mesh, const SteklovSystem& system,
                             const EigenPair& pair, double residual_tol) {
  if (!(pair.residual <= residual_tol))
    throw NotConverged("eigenpair residual above tolerance for flux recovery");

  const Eigen::VectorXd reaction = system.K * pair.u;

  // lumped inner-edge mass per node
  std::vector<double> lump(mesh.node_count(), 0.0);
  for (const auto& e : mesh.inner_edges) {
    const double len = (mesh.nodes[e[0]] - mesh.nodes[e[1]]).norm();
    lump[e[0]] += 0.5 * len;
    lump[e[1]] += 0.5 * len;
  }

  FluxTrace trace;
  trace.radius = mesh.hole_radius;
  trace.center = mesh.hole_center;
  trace.samples.reserve(mesh.inner_ring.size());
  for (int node : mesh.inner_ring) {
    const Vec2 d = mesh.nodes[node] - mesh.hole_center;
    double th = std::atan2(d.y(), d.x());
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    FluxTrace::Sample s;
    s.node = node;
    s.theta = th;
    s.weight = lump[node];
    s.flux = reaction[node] / lump[node];
    s.grad_mag = std::abs(s.flux);
    s.normal = -d / mesh.hole_radius;
    trace.samples.push_back(s);
  }
  return trace;
}

} // namespace steklov
