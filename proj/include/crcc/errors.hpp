#pragma once

#include <stdexcept>
#include <string>

namespace crcc {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new error kinds should derive from one of the groups below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input / validation failures (CLI exit 2).
class InputError : public Error {
 public:
  using Error::Error;
};

class NonStochasticTable : public InputError {
 public:
  using InputError::InputError;
};
class CyclicFactorOrder : public InputError {
 public:
  using InputError::InputError;
};
class MissingChannelFactor : public InputError {
 public:
  using InputError::InputError;
};
class InvalidFactorization : public InputError {
 public:
  using InputError::InputError;
};
class InvalidPmf : public InputError {
 public:
  using InputError::InputError;
};
class UnknownVariable : public InputError {
 public:
  using InputError::InputError;
};
class OverlappingSets : public InputError {
 public:
  using InputError::InputError;
};
class SingularSubstitution : public InputError {
 public:
  using InputError::InputError;
};
class WrongFactorization : public InputError {
 public:
  using InputError::InputError;
};
class StrongInterferenceViolated : public InputError {
 public:
  using InputError::InputError;
};
class InvalidConfig : public InputError {
 public:
  using InputError::InputError;
};
class ParseError : public InputError {
 public:
  using InputError::InputError;
};

// Geometric degeneracies (CLI exit 3).
class GeometryError : public Error {
 public:
  using Error::Error;
};
class Unbounded : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class TooManyVariables : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Resource caps (CLI exit 4).
class CodebookTooLarge : public Error {
 public:
  using Error::Error;
};

// Exact arithmetic left the 64-bit range.
class RationalOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace crcc
