#pragma once

#include <stdexcept>
#include <string>

namespace quanneal {

/// Raised when a request exceeds a documented size limit (statevector width,
/// exhaustive-search width, dense-spectrum width) before any long computation
/// starts.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quanneal
