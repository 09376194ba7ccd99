#pragma once

#include <stdexcept>
#include <string>

namespace wreath {

/// Raised when an enumeration or a polynomial would exceed its configured size budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or mathematically invalid input (bad window, color out of range, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wreath
