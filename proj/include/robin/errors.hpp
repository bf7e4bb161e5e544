#pragma once

#include <stdexcept>
#include <string>

namespace robin {

/// Bad input: out-of-range dimension, non-positive length, unknown regime.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical result could not be certified: quadrature refinement limit,
/// bracket failure during root isolation, tail tolerance not met.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace robin
