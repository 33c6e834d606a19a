#pragma once

#include <stdexcept>
#include <string>

namespace dchain {

// Precondition on an argument was not met (wrong length, bad parameters).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Argument outside the mathematical domain of an operation (t <= 0, n < 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Enumeration request above the desk-scale guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Value cannot be represented exactly (e.g. irrational exchange constant).
class UnsupportedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical invariant broken at run time.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dchain
