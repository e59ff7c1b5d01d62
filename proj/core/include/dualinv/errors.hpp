#pragma once

#include <stdexcept>
#include <string>

namespace dualinv {

// Input violates a mathematical precondition (non-integral value, element
// outside the Cayley domain, uncertified matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An enumeration would exceed the configured residue budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

// Invalid run configuration (bad flag combination, unknown family, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dualinv
