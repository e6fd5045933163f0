#pragma once

#include <stdexcept>
#include <string>

namespace hmskit {

/// Broad classes of failure. The CLI maps these onto exit codes.
enum class ErrorKind {
  parse,        ///< malformed textual input
  domain,       ///< mathematically invalid input (singular matrix, non-member, ...)
  unsupported,  ///< input outside the class this library handles
  resource,     ///< a computation exceeded a configured limit
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

// Violated internal invariant; never expected on valid input.
[[noreturn]] inline void invariant_failure(const std::string& what) {
  throw std::logic_error("hmskit invariant violated: " + what);
}

}  // namespace hmskit
