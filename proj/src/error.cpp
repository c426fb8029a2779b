#include "perpstat/error.hpp"

namespace perpstat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::LagTooLarge: return "LagTooLarge";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::IncompleteWindow: return "IncompleteWindow";
    case ErrorCode::UnevenSpacing: return "UnevenSpacing";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvertedBounds: return "InvertedBounds";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::Underdetermined: return "Underdetermined";
    case ErrorCode::MisalignedSeries: return "MisalignedSeries";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AlignmentError: return "AlignmentError";
    case ErrorCode::IncompleteReport: return "IncompleteReport";
  }
  return "Unknown";
}

}  // namespace perpstat
