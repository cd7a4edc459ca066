#ifndef WEAVEQ_ERRORS_HPP
#define WEAVEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weaveq {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument value: out-of-range parameter, dimension mismatch,
/// malformed subset, negative weight.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Request exceeds a size cap (dense dimension, exact-minimization size).
class CapacityError : public Error {
public:
  explicit CapacityError(const std::string& msg) : Error(msg) {}
};

/// A state failed validation (Hermiticity, trace, positivity).
class InvalidStateError : public Error {
public:
  explicit InvalidStateError(const std::string& msg) : Error(msg) {}
};

/// The symmetric closed form was requested for a state that is not
/// permutation invariant. Carries the measured asymmetry.
class SymmetryError : public Error {
public:
  SymmetryError(const std::string& msg, double asymmetry)
      : Error(msg), measured_asymmetry(asymmetry) {}
  double measured_asymmetry;
};

} // namespace weaveq

#endif
