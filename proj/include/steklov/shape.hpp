// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_SHAPE_HPP
#define STEKLOV_SHAPE_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "steklov/eig.hpp"
#include "steklov/fem.hpp"
#include "steklov/geometry.hpp"

namespace steklov {

/// Samples of a scalar function on the hole circle, sorted by angle about
/// the hole center.
struct CircleTrace {
  std::vector<double> theta;   // strictly increasing, in [0, 2*pi)
  std::vector<double> value;
  double radius = 0.0;

  int size() const { return static_cast<int>(theta.size()); }
};

/// g(theta) = |grad u| <nu, w> from a recovered flux trace.
CircleTrace circle_trace_from_flux(const FluxTrace& flux, const Vec2& w);

struct FourierSeries {
  double a0 = 0.0;                 // constant coefficient convention: a0/2
  std::vector<double> cos_coeffs;  // a_1 .. a_N
  std::vector<double> sin_coeffs;  // b_1 .. b_N

  double evaluate(double theta) const;
};

/// Trapezoid-rule Fourier analysis of a circle trace up to n <= size/2 - 1.
FourierSeries fourier_analyze(const CircleTrace& trace);

/// Dirichlet energy of the harmonic extension of the trace into the disk:
/// pi * sum_n n (a_n^2 + b_n^2).  Radius-independent; the constant mode
/// carries no energy.  Throws TooFewSamples below 16 samples.
double harmonic_extension_energy(const CircleTrace& trace);

/// Boundary integral  -oint |grad u|^2 <w,nu> dH  over the hole circle,
/// trapezoid quadrature with the trace's lumped arc weights.
double first_shape_derivative(const FluxTrace& flux, const Vec2& w);

/// Term breakdown of the second-derivative boundary formula (n = 2).
struct DerivativeReport {
  double sigma = 0.0;
  double sigma_prime = 0.0;
  double term_I = 0.0;           // -2 * harmonic extension energy, <= 0
  double term_II = 0.0;          // -(1/r) oint |grad u|^2, < 0
  double term_III_extra = 0.0;   // -((3n-4)/r) oint |grad u|^2 <w,nu>^2, <= 0
  double sigma_second = 0.0;     // term_I + term_II + term_III_extra
  double fd_first = 0.0;
  double fd_second = 0.0;
  double h = 0.0;
  double delta = 0.0;
  double t = 0.0;
};

/// Assemble the three-term formula from a flux trace.  The fd_* and
/// instance fields are left for the caller.
DerivativeReport second_shape_derivative(const FluxTrace& flux, const Vec2& w,
                                         double r);

struct DerivativeBvp {
  Eigen::VectorXd u_prime;            // full nodal field
  double compatibility_residual = 0.0;
  double boundary_orthogonality = 0.0;  // oint u' u dH on the outer boundary
};

/// Eigenfunction derivative: Laplace in the annulus, Robin-type coupling
/// sigma' u + sigma u' on the outer boundary, Dirichlet datum
/// |grad u| <nu,w> on the hole.  The operator K - sigma M is singular on the
/// free space; the system is solved on the M-orthogonal complement of the
/// eigenvector with one Lagrange-style constraint row.
DerivativeBvp solve_derivative_bvp(const Mesh& mesh, const SteklovSystem& system,
                                   const EigenPair& pair, double sigma_prime,
                                   const Vec2& w);

/// -2 oint (du'/dn) u' dH over the hole (n the hole-outward normal),
/// evaluated from the variationally consistent reactions of the solved
/// derivative field.  Diagnostic companion to DerivativeReport::term_I.
double derivative_bvp_inner_energy(const Mesh& mesh, const SteklovSystem& system,
                                   const EigenPair& pair, const DerivativeBvp& bvp,
                                   double sigma_prime);

struct FiniteDifferences {
  double fd_first = 0.0;
  double fd_second = 0.0;
  double sigma_minus = 0.0, sigma_center = 0.0, sigma_plus = 0.0;
};

/// Central finite differences of sigma over three instances at t - delta,
/// t, t + delta, all meshed with one shared layout so the discretization
/// error cancels in the differences.
FiniteDifferences finite_difference_derivatives(const AnnulusProblem& problem,
                                                double h, double delta,
                                                double solver_tol = 1e-10);

/// P1 interpolation of a nodal field at an arbitrary point, using the
/// structured (angle, radial fraction) chart of the transfinite grid.
/// Points inside the hole evaluate to zero (extension by zero); points
/// outside the outer curve clamp to the boundary ring.
double evaluate_on_mesh(const Mesh& mesh, const Eigen::VectorXd& nodal,
                        const Vec2& point);

} // namespace steklov

#endif
