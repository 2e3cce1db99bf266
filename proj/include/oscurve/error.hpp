#pragma once

#include <stdexcept>
#include <string>

namespace oscurve {

/// A caller-supplied argument is outside the operation's contract
/// (bad sample count, zero constant, unknown catalog name, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a geometric or domain precondition
/// (grid outside a curve's valid domain, invalid Frenet samples, short CSV, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The curve is not regular: its speed vanishes somewhere.
class DegenerateCurve : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computed result failed its own numerical post-condition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File system failure; the message carries the OS error text verbatim.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oscurve
