#pragma once

#include <stdexcept>
#include <string>

namespace loopmot {

// Domain-level failure with a stable machine-readable code such as
// "NotSymmetric" or "Divergent". The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
  throw DomainError(code, message);
}

}  // namespace loopmot
