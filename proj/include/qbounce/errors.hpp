#pragma once

#include <stdexcept>
#include <string>

namespace qbounce {

// Invalid argument to a mathematical routine (non-finite input, index out of range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical procedure (root search, linear solve) could not deliver a result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qbounce
