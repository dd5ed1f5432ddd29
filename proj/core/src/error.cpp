#include "credal/error.hpp"

namespace credal {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::kNegativeWeight: return "NegativeWeight";
    case Errc::kZeroTotal: return "ZeroTotal";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kSpaceMismatch: return "SpaceMismatch";
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kZeroProbabilityEvent: return "ZeroProbabilityEvent";
    case Errc::kAllMembersZero: return "AllMembersZero";
    case Errc::kConfigInvalid: return "ConfigInvalid";
    case Errc::kIndexOutOfRange: return "IndexOutOfRange";
    case Errc::kAllDropped: return "AllDropped";
    case Errc::kStepTooLarge: return "StepTooLarge";
    case Errc::kDegenerateFamily: return "DegenerateFamily";
    case Errc::kZeroEvidence: return "ZeroEvidence";
    case Errc::kImpossibleHistory: return "ImpossibleHistory";
    case Errc::kParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_numeric_failure(Errc code) noexcept {
  switch (code) {
    case Errc::kZeroProbabilityEvent:
    case Errc::kAllMembersZero:
    case Errc::kAllDropped:
    case Errc::kDegenerateFamily:
    case Errc::kZeroEvidence:
      return true;
    default:
      return false;
  }
}

void fail(Errc code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace credal
