#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dikin {

enum class ErrorCode {
  NotPositiveDefinite,
  NotSymmetric,
  DimensionMismatch,
  SyntaxError,
  DimensionError,
  ZeroRow,
  InvalidSpec,
  BoundaryPoint,
  IdenticalPoints,
  UnboundedChord,
  NoConvergence,
  OutOfRange,
  PreconditionViolated,
  NotIsotropic,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; `code()` says what went wrong and
// `index()` carries the pivot / line / constraint number where one applies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  long index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  long index_;
};

}  // namespace dikin
