#pragma once

#include <stdexcept>
#include <string>

namespace aperiodica {

// Malformed or out-of-contract input supplied by a caller.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A requested object could not be built from otherwise valid input
// (e.g. no fixed point found within the search bound).
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// A configured resource cap was hit before an iterative procedure settled.
class LimitError : public std::runtime_error {
 public:
  explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant. Reaching one of these is a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace aperiodica
