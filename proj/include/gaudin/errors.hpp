#pragma once

#include <stdexcept>
#include <string>

namespace gaudin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A weight function or kernel was evaluated on (or too near) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// d(λ) vanished where the ratio a/d was requested.
class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

/// The vacuum variant does not support the requested evaluation (FreeX has no a, d).
class UnsupportedVariant : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

/// Two rapidities came within the collision distance of each other.
class CollisionError : public Error {
 public:
  using Error::Error;
};

class OffShellError : public Error {
 public:
  using Error::Error;
};

class ProportionalityViolation : public Error {
 public:
  using Error::Error;
};

class NotOnShell : public Error {
 public:
  using Error::Error;
};

class UnsupportedN : public Error {
 public:
  using Error::Error;
};

}  // namespace gaudin
