#include "growthtrend/error.hpp"

namespace growthtrend {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::kMalformedRow: return "MalformedRow";
    case Errc::kDuplicateYear: return "DuplicateYear";
    case Errc::kGapInYears: return "GapInYears";
    case Errc::kNonPositiveValue: return "NonPositiveValue";
    case Errc::kTooShort: return "TooShort";
    case Errc::kWindowOutOfRange: return "WindowOutOfRange";
    case Errc::kBadWindow: return "BadWindow";
    case Errc::kMissingHeader: return "MissingHeader";
    case Errc::kIo: return "Io";
    case Errc::kNonStationaryParams: return "NonStationaryParams";
    case Errc::kNumericalBreakdown: return "NumericalBreakdown";
    case Errc::kInsufficientData: return "InsufficientData";
    case Errc::kDegenerateDesign: return "DegenerateDesign";
    case Errc::kSingularHessian: return "SingularHessian";
    case Errc::kUnknownCoefficient: return "UnknownCoefficient";
    case Errc::kBadGridConfig: return "BadGridConfig";
    case Errc::kRankDeficient: return "RankDeficient";
    case Errc::kZeroVariance: return "ZeroVariance";
    case Errc::kAiccUndefined: return "AICcUndefined";
    case Errc::kAllFitsFailed: return "AllFitsFailed";
    case Errc::kUnknownId: return "UnknownId";
    case Errc::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace growthtrend
