#pragma once

#include <stdexcept>
#include <string>

namespace qdist {

// A precondition on an argument does not hold (even p, inv(0), odd dimension...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource cap would be exceeded.
class CapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed or unknown configuration input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qdist
