#pragma once

#include <stdexcept>
#include <string>

namespace corrtest {

/// Operands have incompatible sizes (e.g. graphs on different node counts).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric argument lies outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exhaustive routine refused an input above its configured size limit.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A structural precondition (orbit, orbit graph, ...) was violated by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace corrtest
