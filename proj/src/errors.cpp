#include "pvac/errors.hpp"

namespace pvac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRangeGamma: return "OutOfRangeGamma";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::EtaSlopeOutOfBounds: return "EtaSlopeOutOfBounds";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::InsufficientSmoothness: return "InsufficientSmoothness";
    case ErrorCode::RingNotFull: return "RingNotFull";
    case ErrorCode::EmbeddingViolated: return "EmbeddingViolated";
    case ErrorCode::RunInvalid: return "RunInvalid";
    case ErrorCode::RateUnstable: return "RateUnstable";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace pvac
