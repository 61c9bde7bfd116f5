#include "conflate/error.h"

namespace conflate {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAllZeroMass: return "AllZeroMass";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kBadKey: return "BadKey";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::kBadResolution: return "BadResolution";
    case ErrorCode::kRepresentationMismatch: return "RepresentationMismatch";
    case ErrorCode::kIncompatible: return "Incompatible";
    case ErrorCode::kDegenerateProduct: return "DegenerateProduct";
    case ErrorCode::kInvalidEvent: return "InvalidEvent";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnsupportedMass: return "UnsupportedMass";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace conflate
