#pragma once

#include <stdexcept>
#include <string>

namespace pbt {

// Raised when a request exceeds an enumeration or dimension limit.
class GuardError : public std::length_error {
 public:
  explicit GuardError(const std::string& what) : std::length_error(what) {}
};

// Raised when a numerical construction fails one of its own consistency checks.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pbt
