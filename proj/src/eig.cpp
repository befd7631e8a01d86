// SPDX-License-Identifier: Apache-2.0
#include "steklov/eig.hpp"

#include <cmath>

#include <Eigen/SparseCholesky>

namespace steklov {

namespace {

EigenPair power_iterate(const SteklovSystem& system,
                        const Eigen::SimplicialLDLT<SparseMat>& chol,
                        const std::vector<const EigenPair*>& deflate,
                        const SolveOptions& opts) {
  const int nf = system.n_free();
  std::vector<Eigen::VectorXd> defl;
  defl.reserve(deflate.size());
  for (const EigenPair* p : deflate) defl.push_back(system.restrict_free(p->u));

  const auto project_out = [&](Eigen::VectorXd& v) {
    for (const auto& d : defl) v -= d * (d.dot(system.M_ff * v));
  };

  Eigen::VectorXd v = opts.start ? system.restrict_free(*opts.start)
                                 : Eigen::VectorXd::Ones(nf);
  project_out(v);

  double sigma = 0.0, sigma_prev = 0.0, res = 1.0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Eigen::VectorXd mv = system.M_ff * v;
    Eigen::VectorXd x = chol.solve(mv);
    project_out(x);
    const Eigen::VectorXd mx = system.M_ff * x;
    const double mnorm2 = x.dot(mx);
    if (!(mnorm2 > 0.0))
      throw NotConverged("iteration vector lost its boundary trace");
    // Rayleigh quotient of the pencil; x^T K x = x^T M v by construction
    const Eigen::VectorXd kx = system.K_ff * x;
    sigma = x.dot(kx) / mnorm2;
    if (opts.sigma_history) opts.sigma_history->push_back(sigma);
    res = (kx - sigma * mx).norm() / kx.norm();
    v = x / std::sqrt(mnorm2);
    if (it > 0 && std::abs(sigma - sigma_prev) < opts.tol * std::abs(sigma) &&
        res < opts.tol)
      break;
    sigma_prev = sigma;
  }
  if (it >= opts.max_iterations)
    throw NotConverged("power iteration exceeded the iteration cap");

  // normalize and fix the sign on the max-magnitude entry
  const double mnorm = std::sqrt(v.dot(system.M_ff * v));
  v /= mnorm;
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v[imax] < 0.0) v = -v;

  EigenPair pair;
  pair.sigma = sigma;
  pair.u = system.extend_by_zero(v);
  pair.residual = res;
  pair.iterations = it + 1;
  return pair;
}

} // namespace

EigenPair solve_smallest(const SteklovSystem& system, const SolveOptions& opts) {
  if (!(opts.tol > 0.0) || opts.tol > 1e-4)
    throw BadParameter("tolerance must lie in (0, 1e-4]");
  Eigen::SimplicialLDLT<SparseMat> chol(system.K_ff);
  if (chol.info() != Eigen::Success || (chol.vectorD().array() <= 0.0).any())
    throw SingularSystem("reduced stiffness is not positive definite");
  return power_iterate(system, chol, {}, opts);
}

EigenPair solve_deflated(const SteklovSystem& system,
                         const std::vector<const EigenPair*>& deflate,
                         const SolveOptions& opts) {
  if (!(opts.tol > 0.0) || opts.tol > 1e-4)
    throw BadParameter("tolerance must lie in (0, 1e-4]");
  Eigen::SimplicialLDLT<SparseMat> chol(system.K_ff);
  if (chol.info() != Eigen::Success || (chol.vectorD().array() <= 0.0).any())
    throw SingularSystem("reduced stiffness is not positive definite");
  return power_iterate(system, chol, deflate, opts);
}

EigenPair solve_second(const SteklovSystem& system, const EigenPair& first,
                       const SolveOptions& opts) {
  return solve_deflated(system, {&first}, opts);
}

double rayleigh(const SteklovSystem& system, const Eigen::VectorXd& u) {
  const double m = u.dot(system.M_out * u);
  if (!(m > 0.0))
    throw ZeroBoundaryTrace("trial function vanishes on the outer boundary");
  return u.dot(system.K * u) / m;
}

} // namespace steklov
