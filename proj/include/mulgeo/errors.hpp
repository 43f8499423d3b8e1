#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mulgeo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a multiplicative operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Division by the multiplicative zero 0* (the number 1).
class DivisionByZeroError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Operand shapes do not agree (vector dimensions, sample grids).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not reach the requested accuracy.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Derivative requested through a kink (|x| at x = 0).
class NonDifferentiableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Parse failure with the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(what), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// The curve velocity vanishes (log-speed 0) at the reported parameter.
class SingularCurveError : public Error {
 public:
  SingularCurveError(const std::string& what, double at_log)
      : Error(what), at_log_(at_log) {}
  double at_log() const noexcept { return at_log_; }

 private:
  double at_log_;
};

/// Curvature is 0* so the principal normal is undefined.
class FrameUndefinedError : public Error {
 public:
  FrameUndefinedError(const std::string& what, double at_log)
      : Error(what), at_log_(at_log) {}
  double at_log() const noexcept { return at_log_; }

 private:
  double at_log_;
};

/// An operation that needs a natural parametrization was given another one.
class NotNaturalError : public Error {
 public:
  NotNaturalError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// The curve does not admit the requested partner construction.
class InadmissibleError : public Error {
 public:
  InadmissibleError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

}  // namespace mulgeo
