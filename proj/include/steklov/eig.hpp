// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_EIG_HPP
#define STEKLOV_EIG_HPP

#include <vector>

#include <Eigen/Dense>

#include "steklov/fem.hpp"

namespace steklov {

/// A converged eigenpair of  K u = sigma M_out u  on the Dirichlet-reduced
/// space.  u is a full nodal vector, exactly zero on the hole nodes,
/// normalized to u^T M_out u = 1 and sign-fixed positive.
struct EigenPair {
  double sigma = 0.0;
  Eigen::VectorXd u;
  double residual = 0.0;  // ||K u - sigma M u|| / ||K u|| on free nodes
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-10;          // relative, for both Rayleigh drift and residual
  int max_iterations = 10000;
  const Eigen::VectorXd* start = nullptr;     // full-size warm start (optional)
  std::vector<double>* sigma_history = nullptr;  // per-iteration estimates
};

/// Smallest eigenvalue by power iteration on v -> K^{-1} M v after one
/// symmetric positive definite factorization of the reduced stiffness.
EigenPair solve_smallest(const SteklovSystem& system, const SolveOptions& opts = {});

/// Next eigenvalue with M-orthogonal deflation against the given pairs.
EigenPair solve_deflated(const SteklovSystem& system,
                         const std::vector<const EigenPair*>& deflate,
                         const SolveOptions& opts = {});

/// Second eigenvalue (deflation against the first pair).
EigenPair solve_second(const SteklovSystem& system, const EigenPair& first,
                       const SolveOptions& opts = {});

/// (u^T K u) / (u^T M_out u) for a full nodal vector.
/// Throws ZeroBoundaryTrace when u vanishes on the outer boundary.
double rayleigh(const SteklovSystem& system, const Eigen::VectorXd& u);

} // namespace steklov

#endif
