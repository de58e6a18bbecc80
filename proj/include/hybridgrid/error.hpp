#pragma once

#include <stdexcept>
#include <string>

namespace hybridgrid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Malformed input text (CSV cell, config value).
class ParseError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse_error"; }
};

/// Structural mismatch: header, column count, unknown config key.
class SchemaError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema_error"; }
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

/// Invalid simulation input (NaN, length mismatch, missing cells).
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input_error"; }
};

/// Gap in a climate record that no neighbor station can fill.
class UnrecoverableGapError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unrecoverable_gap"; }
};

/// A requested configuration cannot be satisfied (e.g. baseline DG below peak load).
class InfeasibleError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "infeasible"; }
};

}  // namespace hybridgrid
