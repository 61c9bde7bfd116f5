#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conflate {

enum class ErrorCode {
  kAllZeroMass,
  kNonFinite,
  kDuplicateKey,
  kBadKey,
  kNotNormalized,
  kInvalidArgument,
  kInsufficientCoverage,
  kBadResolution,
  kRepresentationMismatch,
  kIncompatible,
  kDegenerateProduct,
  kInvalidEvent,
  kTooLarge,
  kUnsupportedMass,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them to stable exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace conflate
