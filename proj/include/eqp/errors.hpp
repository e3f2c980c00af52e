#pragma once

#include <stdexcept>
#include <string>

namespace eqp {

// Input/precondition violations map to std::invalid_argument.
// Iterative procedures that fail to converge throw numerical_error.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eqp
