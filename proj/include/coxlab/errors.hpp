#pragma once

#include <stdexcept>
#include <string>

namespace coxlab {

// Malformed matrix documents, bad words, indices out of range.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An explicit computational cap (elements, chambers, iterations) was hit.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested value does not live in the session field.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two routes that must agree did not; carries a reproduction dump.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace coxlab
