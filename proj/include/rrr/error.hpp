#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rrr {

enum class ErrorCode {
  kConstantAttribute,
  kNonFiniteValue,
  kValueOutOfRange,
  kDimensionMismatch,
  kKOutOfRange,
  kAngleOutOfRange,
  kDimensionNot2D,
  kUncoverableSpace,
  kEmptySubset,
  kLpNumericalFailure,
  kEmptyCollection,
  kGroundSetTooLarge,
  kFileNotFound,
  kNoUsableRows,
  kParseError,
  kInvalidConfig,
};

// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { kInput, kConfig, kNumeric };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, int subject = -1)
      : std::runtime_error(message), code_(code), subject_(subject) {}

  ErrorCode code() const noexcept { return code_; }
  // Index of the offending attribute/tuple when the error names one, else -1.
  int subject() const noexcept { return subject_; }

 private:
  ErrorCode code_;
  int subject_;
};

}  // namespace rrr
