#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace growthtrend {

// Error kinds raised by the library. The numeric values are stable; the C API
// reports them verbatim as GT_ERR_* codes.
enum class Errc : int {
  kMalformedRow = 10,
  kDuplicateYear = 11,
  kGapInYears = 12,
  kNonPositiveValue = 13,
  kTooShort = 14,
  kWindowOutOfRange = 15,
  kBadWindow = 16,
  kMissingHeader = 17,
  kIo = 18,

  kNonStationaryParams = 30,
  kNumericalBreakdown = 31,
  kInsufficientData = 32,
  kDegenerateDesign = 33,
  kSingularHessian = 34,
  kUnknownCoefficient = 35,

  kBadGridConfig = 50,
  kRankDeficient = 51,
  kZeroVariance = 52,

  kAiccUndefined = 70,
  kAllFitsFailed = 71,
  kUnknownId = 72,

  kInvalidArgument = 90,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace growthtrend
