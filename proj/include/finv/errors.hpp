#pragma once

#include <stdexcept>
#include <string>

namespace finv {

/// Input outside the mathematical domain of an operation (e.g. a rational
/// outside (0,1] handed to the digit machinery).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed argument (non-prime modulus, mismatched lengths, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource budget was exceeded before the computation finished.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The oracle could not reach a verdict (degree bound hit, no stabilization).
/// Never used to encode a negative answer.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form query outside the range covered by the known formulas.
class UnsupportedRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A lemma's standing hypothesis does not hold for the given input.
class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace finv
