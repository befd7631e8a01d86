// SPDX-License-Identifier: Apache-2.0
//
// Independent oracles used by the tests.  Everything here is deliberately
// separate from the library's implementation paths: the disk solver carries
// its own mesh and assembly, and the eigenvalue references come from the
// separated radial ODE of the concentric shell.
#ifndef STEKLOV_TESTS_ORACLES_HPP
#define STEKLOV_TESTS_ORACLES_HPP

#include <functional>

namespace oracles {

/// Dirichlet energy of the P1 solution of  Laplace u = 0  on the disk of
/// the given radius with boundary data g(theta).  Structured polar mesh,
/// n_theta x n_rad, self-contained assembly and solve.
double disk_dirichlet_energy(const std::function<double(double)>& g,
                             double radius, int n_theta, int n_rad);

/// Concentric-shell eigenvalue of angular mode m (2D):
/// m = 0 gives 1/(R log(R/r)); m >= 1 uses u = rho^m - r^{2m} rho^{-m},
/// sigma = u'(R)/u(R).
double concentric_mode_sigma(double R, double r, int m);

/// Largest admissible offset on an ellipse along direction (wx, wy), by
/// dense sampling of the boundary distance (the brute-force cross-check).
double ellipse_tmax_dense(double a, double b, double r, double wx, double wy,
                          int n_samples = 100000);

// Eigenvalue references for the eccentric disk shell, precomputed with a
// spectral collocation solver (harmonic basis about both centers, machine
// converged; see the derivative study that accompanies this suite).
struct EccentricReference {
  double t;
  double sigma;
  double sigma_prime;   // exact boundary-formula value = d sigma/dt
  double sigma_second;  // true second derivative (Richardson finite difference)
};

/// Disk R = 2, hole r = 0.5, direction e1.
const EccentricReference* disk_R2_r05_reference(double t);

} // namespace oracles

#endif
