#pragma once

#include <stdexcept>
#include <string>

namespace equiaudit {

/// Invalid input: malformed spec, violated precondition, incompatible method.
/// Maps to CLI exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mathematical degeneracy encountered inside an otherwise valid problem
/// (e.g. a rank-deficient Q matrix). Maps to CLI exit code 3.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace equiaudit
