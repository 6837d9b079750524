#pragma once

#include <stdexcept>
#include <string>

namespace fialg {

/// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two values from different coefficient domains met in one operation,
/// or a value was used over a domain it does not belong to.
struct RingMismatch : Error {
  using Error::Error;
};

/// Two elements (or an element and a map) over different carriers met
/// in one operation.
struct StructureMismatch : Error {
  using Error::Error;
};

/// An input document or serialized value could not be parsed.
struct ParseError : Error {
  using Error::Error;
};

/// A precondition on an operation's inputs failed.
struct ValidationError : Error {
  using Error::Error;
};

/// A candidate edge weighting broke f(x,y) + f(y,z) = f(x,z).
struct TransitivityViolation : ValidationError {
  int x, y, z;
  TransitivityViolation(int x_, int y_, int z_, const std::string& what)
      : ValidationError(what), x(x_), y(y_), z(z_) {}
};

}  // namespace fialg
