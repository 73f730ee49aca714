#pragma once

#include <stdexcept>
#include <string>

namespace quantchar {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points, grids or measures of different dimensions were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The requested operation has no implementation for this representation
/// (for example a closed form requested on a sampler-backed measure).
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A numerical result is non-finite or inconsistent beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace quantchar
