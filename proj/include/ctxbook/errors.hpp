#pragma once

#include <stdexcept>
#include <string>

namespace ctxbook {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A set or section argument lies outside the domain an operation requires.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two sections of a family disagree on a shared measurement.
class IncompatibleFamily : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Probability weights that do not form a distribution.
class WeightError : public Error {
 public:
  using Error::Error;
};

class ScenarioMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, model, or file content.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A padding specification that would break WC, EC or ME.
class PaddingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A set is not a member of the event family of a representation.
class NotAnEvent : public Error {
 public:
  using Error::Error;
};

/// An operation that requires a combinatorial representation got another.
class NotCombinatorial : public Error {
 public:
  using Error::Error;
};

/// The model does not sit in the tier an operation was asked to witness.
class TierMismatch : public Error {
 public:
  using Error::Error;
};

/// Signals an implementation bug: a constructed object failed its own check.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctxbook
