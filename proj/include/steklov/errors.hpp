// SPDX-License-Identifier: Apache-2.0
#ifndef STEKLOV_ERRORS_HPP
#define STEKLOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace steklov {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// geometry
struct NonPositiveRadius : Error { using Error::Error; };
struct AsymmetricProfile : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };
struct HoleTooLarge : Error { using Error::Error; };
struct DegenerateGeometry : Error { using Error::Error; };

// fem
struct EmptyBoundary : Error { using Error::Error; };

// eig
struct NotConverged : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct ZeroBoundaryTrace : Error { using Error::Error; };

// shape
struct EmptyTrace : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct IncompatibleData : Error { using Error::Error; };
struct StepTooLarge : Error { using Error::Error; };

// analytic
struct BadShell : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };

} // namespace steklov

#endif
