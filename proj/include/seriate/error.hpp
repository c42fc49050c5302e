#pragma once

#include <stdexcept>
#include <string>

namespace seriate {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (delimited matrices, tree JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally inconsistent input, e.g. ragged matrix rows.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Unknown name passed to a registry lookup (fixtures).
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A precondition on values was violated (not a permutation of the
/// universe, asymmetric similarity input, k > n, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure inside the eigensolver.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An enumeration request exceeded its cap. Carries the exact frontier
/// count as a decimal string, since it can exceed any machine integer.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::string exact_count)
      : Error(what), exact_count_(std::move(exact_count)) {}

  const std::string& exact_count() const { return exact_count_; }

 private:
  std::string exact_count_;
};

}  // namespace seriate
