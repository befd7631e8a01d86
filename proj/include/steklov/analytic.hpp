// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_ANALYTIC_HPP
#define STEKLOV_ANALYTIC_HPP

#include <utility>

#include "steklov/errors.hpp"

namespace steklov {

/// Concentric spherical shell, outer radius R, inner radius r, dimension n.
struct ShellSpec {
  double R = 0.0;
  double r = 0.0;
  int n = 2;
};

/// Closed-form first eigenvalue of the concentric shell:
/// n = 2: 1/(R log(R/r)); n >= 3 from the radial harmonic profile
/// r^(2-n) - rho^(2-n) vanishing at the inner radius.
double concentric_sigma(const ShellSpec& spec);

struct EccentricBounds {
  double upper = 0.0;  // concentric value, maximal over offsets
  double lower = 0.0;  // r / (2 R (R - r))
};

/// Two-sided bounds for the eccentric disk shell (2D).
EccentricBounds eccentric_bounds(double R, double r);

} // namespace steklov

#endif
