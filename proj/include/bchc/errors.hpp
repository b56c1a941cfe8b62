#pragma once

#include <stdexcept>
#include <string>

namespace bchc {

// Raised when an exact-enumeration size guard would be exceeded.
class GuardError : public std::runtime_error {
  public:
    explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace bchc
