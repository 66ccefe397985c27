#pragma once

#include <stdexcept>
#include <string>

namespace exclab {

// Invalid user-supplied parameter (CLI exit code 2).
struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Geometry that cannot be represented or does not fit (CLI exit code 2).
struct GeometryError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard resource cap (CLI exit code 3).
struct SizeCap : std::length_error {
  using std::length_error::length_error;
};

// Sampling from an identically-zero function.
struct ZeroFunction : std::domain_error {
  using std::domain_error::domain_error;
};

// A tabulated scan never reached the requested threshold.
struct NotReached : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature head diverges for the requested exponent.
struct DivergentHead : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace exclab
