#pragma once

#include <stdexcept>
#include <string>

namespace nucleo {

/// Bad user input: malformed game files, invalid weights/quota,
/// dimension mismatches. CLI exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An enumeration guard was exceeded (the request would take exponential
/// work beyond the configured limit). CLI exit code 2.
class guard_error : public std::runtime_error {
 public:
  explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal contract violation: a precondition that callers inside this
/// library are supposed to guarantee does not hold. CLI exit code 3.
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace nucleo
