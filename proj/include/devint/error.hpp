#pragma once

#include <stdexcept>
#include <string>

namespace devint {

// Bad input data: malformed records, dangling references, infeasible specs.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad caller request: unknown ids, illegal metric or kind selections.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace devint
