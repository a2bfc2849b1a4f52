#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resolvent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomials or matrices from different rings were combined.
class ContextError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by instance validation; `kind` is a stable machine-readable name
/// (IdentityMismatch, NotMinimal, NotRegular, BadShape, ...).
class ValidationError : public Error {
 public:
  ValidationError(std::string kind, const std::string& detail)
      : Error(kind + ": " + detail), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

/// A structural invariant of a complex or map failed (d*d != 0, non-homogeneous
/// entry, non-commuting square, ...).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ChainMapError : public ConstructionError {
 public:
  using ConstructionError::ConstructionError;
};

}  // namespace resolvent
