#pragma once

#include <stdexcept>
#include <string>

namespace hgfq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments or preconditions (bad prime, d not dividing q-1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An enumeration or field-size budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Two exact computations that must agree did not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace hgfq
