// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_FEM_HPP
#define STEKLOV_FEM_HPP

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "steklov/geometry.hpp"

namespace steklov {

using SparseMat = Eigen::SparseMatrix<double>;

/// Discrete operator pair of the Steklov-Dirichlet problem on a mesh:
/// full stiffness K, outer-boundary mass M_out, and the split of nodes into
/// Dirichlet (hole) and free sets with the reduced blocks cached.
struct SteklovSystem {
  SparseMat K;       // stiffness over all nodes
  SparseMat M_out;   // outer-boundary mass over all nodes
  SparseMat K_ff;    // reduced to free nodes
  SparseMat M_ff;
  std::vector<int> dirichlet_nodes;  // sorted
  std::vector<int> free_nodes;       // sorted
  std::vector<int> full_to_free;     // -1 on dirichlet nodes

  int n_full() const { return static_cast<int>(full_to_free.size()); }
  int n_free() const { return static_cast<int>(free_nodes.size()); }

  Eigen::VectorXd restrict_free(const Eigen::VectorXd& full) const;
  /// Embeds a free-node vector into a full vector, zero on dirichlet nodes.
  Eigen::VectorXd extend_by_zero(const Eigen::VectorXd& free) const;
};

/// P1 assembly: exact constant-gradient stiffness per triangle and exact
/// 2-node mass (length/6 * [[2,1],[1,2]]) per outer edge.
SteklovSystem assemble(const Mesh& mesh);

struct EigenPair;  // defined in eig.hpp

/// Normal flux of the eigenfunction on the hole boundary, one sample per
/// inner node, in angular order about the hole center.  nu is the unit
/// normal of the annulus on the hole (pointing at the hole center), so the
/// flux of a positive eigenfunction is nonpositive.
struct FluxTrace {
  struct Sample {
    int node;
    double theta;     // angle about the hole center, in [0, 2*pi)
    double flux;      // du/dnu
    double grad_mag;  // |grad u| = |flux| on the zero level set
    double weight;    // lumped boundary length attached to the node
    Vec2 normal;      // nu = -(x - c)/r
  };
  std::vector<Sample> samples;
  double radius = 0.0;
  Vec2 center = Vec2::Zero();

  double boundary_length() const;
  bool sign_constant() const;
  /// Throws if the nodal fluxes change sign.
  void audit() const;
};

/// Variationally consistent flux recovery: the residual of the unconstrained
/// stiffness at the Dirichlet nodes equals the weak boundary flux; nodal
/// values are obtained with the lumped (row-sum) inner-edge mass.
/// Throws NotConverged when the pair's residual exceeds residual_tol.
FluxTrace recover_inner_flux(const Mesh& mesh, const SteklovSystem& system,
                             const EigenPair& pair, double residual_tol = 1e-6);

} // namespace steklov

#endif
