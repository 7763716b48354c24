#pragma once

#include <stdexcept>
#include <string>

namespace sensornet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear system is singular or not positive definite (e.g. a disconnected
/// measurement graph).
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// An iterative kernel failed to converge within its iteration cap.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

/// Two participating nodes share a position, so a distance-based quantity is
/// undefined.
class DegenerateGeometry : public Error {
 public:
  using Error::Error;
};

/// A packet log lacks the stamps needed by an estimator.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// The cell relay scheme found an empty cell on some route.
class SchemeFailure : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its configured budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// No feasible object exists (e.g. no tree reaches the collector).
class Infeasible : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw InvalidArgument(message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace sensornet
