#pragma once

#include <stdexcept>
#include <string>

namespace mzroots {

/// Base class for the domain failures raised by the library. Precondition
/// violations on plain arguments (p <= 1, negative n, ...) raise
/// std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two nodes of a set coincide within the collision threshold.
class CollisionError : public Error {
 public:
  using Error::Error;
};

/// The quadrature grid cannot resolve the requested polynomial degree.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// A polynomial's degree exceeds the degree bound of the node set.
class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

/// The sampling matrix is numerically singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace mzroots
