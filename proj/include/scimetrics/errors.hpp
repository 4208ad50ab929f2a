#pragma once

#include <stdexcept>
#include <string>

namespace scimetrics {

// Raised when an input file cannot be opened or is structurally unusable.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scimetrics
