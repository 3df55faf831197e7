#pragma once

#include <stdexcept>
#include <string>

namespace rflab {

// Raised when a request exceeds a configured capacity bound (sieve cap,
// enumeration cap) rather than being malformed.
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an internal cross-check fails (e.g. an exponential sum that
// must be integral is not). Indicates a broken build, not bad input.
class internal_consistency_error : public std::runtime_error {
public:
  explicit internal_consistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rflab
