#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  OutOfDomain,
  Validation,
  DegenerateDirections,
  Singular,
  Infeasible,
  Parse,
  NotSurjective,
  Internal,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const char* message) {
  if (!condition) fail(kind, message);
}

}  // namespace carnot
