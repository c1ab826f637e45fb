#pragma once

#include <stdexcept>
#include <string>

namespace cem {

// Problems with input data: missing or unreadable files, conflicting
// ground-truth records, malformed binary containers. The CLI maps these to
// exit code 2; contract violations (bad arguments) use std::invalid_argument
// and map to exit code 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cem
