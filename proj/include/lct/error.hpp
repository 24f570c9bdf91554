#pragma once

#include <stdexcept>
#include <string>

namespace lct {

// Domain error carrying a human-readable message with input context
// (file line, node path, offending token) already formatted in.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lct
