#pragma once

#include <stdexcept>
#include <string>

namespace abc {

// Malformed input, violated preconditions, unsupported group parameters.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable resource cap (element count, search bound) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace abc
