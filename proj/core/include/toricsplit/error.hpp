#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toricsplit {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a mathematical precondition or invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Checked integer arithmetic left the representable range.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A fan is malformed (bad index, zero ray, nested maximal cones, ...).
class StructuralError : public DomainError {
 public:
  using DomainError::DomainError;
};

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A factor outside the recovery alphabet (e.g. DIAG(1)) was supplied.
class AlphabetError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An invariant bundle that no product over the alphabet produces.
class InconsistentBundleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual input. `position()` is a byte offset into the input
/// (or npos when the error is structural rather than lexical).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = npos)
      : Error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t position_;
};

/// An enumeration would exceed its configured budget.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace toricsplit
