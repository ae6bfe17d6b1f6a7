#pragma once

#include <stdexcept>
#include <string>

namespace mixscope {

// Malformed input or a precondition the caller could have checked.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well formed but exceeds an enumeration or encoding budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation ran but its result is undefined (e.g. conditioning on an
// event of probability zero).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixscope
