#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace credal {

enum class Errc {
  kNegativeWeight,
  kZeroTotal,
  kLengthMismatch,
  kSpaceMismatch,
  kInvalidArgument,
  kZeroProbabilityEvent,
  kAllMembersZero,
  kConfigInvalid,
  kIndexOutOfRange,
  kAllDropped,
  kStepTooLarge,
  kDegenerateFamily,
  kZeroEvidence,
  kImpossibleHistory,
  kParseError,
};

std::string_view to_string(Errc code) noexcept;

// True for failures that come out of the numerics (as opposed to bad input).
bool is_numeric_failure(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace credal
