#pragma once

#include <stdexcept>
#include <string>

namespace sdesign {

/// A precondition on user-supplied arguments was violated. CLI exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (orbit size, field size, expansion size) was hit. CLI exit code 3.
class ResourceCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class ConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sdesign
