#pragma once

#include <stdexcept>
#include <string>

namespace aldous_lab {

// Stable numeric values: the C API forwards them unchanged as status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kPrecondition = 2,
  kResourceLimit = 3,
  kNotConverged = 4,
  kHypothesisViolation = 5,
  kIo = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace aldous_lab
