#pragma once

#include <stdexcept>
#include <string>

namespace lochmf {

// Input outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested accuracy cannot be met with the given truncation parameters.
class BudgetInfeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sample point sits on (or too close to) a wall where the check is undefined.
class WallCollision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lochmf
