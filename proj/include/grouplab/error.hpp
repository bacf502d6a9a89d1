#pragma once

#include <stdexcept>
#include <string>

namespace grouplab {

// Malformed input: bad word syntax, bad scenario, wrong arity.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A staged construction did not define a value within its stage budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace grouplab
