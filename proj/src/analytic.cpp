// SPDX-License-Identifier: Apache-2.0
#include "steklov/analytic.hpp"

#include <cmath>

namespace steklov {

double concentric_sigma(const ShellSpec& spec) {
  if (!(spec.R > spec.r) || !(spec.r > 0.0))
    throw BadShell("shell requires R > r > 0");
  if (spec.n < 2)
    throw BadShell("dimension must be at least 2");
  if (spec.n == 2)
    return 1.0 / (spec.R * std::log(spec.R / spec.r));
  const double p = static_cast<double>(spec.n - 2);
  // u(rho) = r^(2-n) - rho^(2-n); sigma = u'(R)/u(R)
  return p * std::pow(spec.R, 1.0 - spec.n) /
         (std::pow(spec.r, 2.0 - spec.n) - std::pow(spec.R, 2.0 - spec.n));
}

EccentricBounds eccentric_bounds(double R, double r) {
  if (!(R > r) || !(r > 0.0))
    throw BadShell("shell requires R > r > 0");
  EccentricBounds b;
  b.upper = 1.0 / (R * std::log(R / r));
  b.lower = r / (2.0 * R * (R - r));
  return b;
}

} // namespace steklov
