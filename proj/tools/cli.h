#pragma once

#include <ostream>
#include <span>
#include <string>

namespace conflate::cli {

// Exit statuses of the `conflate` tool.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kParseFailure = 2,
  kIncompatibleInputs = 3,
  kDegenerateProduct = 4,
  kTooLarge = 5,
  kBadResolution = 6,
  kUnsupportedMass = 7,
};

// Runs one CLI invocation; args excludes the program name.
int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace conflate::cli
