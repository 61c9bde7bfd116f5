#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "conflate/distribution.h"

namespace conflate {

// Distribution files are JSON objects discriminated by "kind":
//
//   {"kind": "discrete", "atoms": [["0", 0.5], ["1", 0.5]]}
//   {"kind": "grid", "origin": -1, "delta": 0.25, "densities": [...]}
//   {"kind": "family", "family": "normal", "params": {"mean": 0, "sd": 1},
//    "grid": {"origin": -8, "delta": 0.01, "cells": 1600}}
//
// docs/file-format.md has the full grammar. Parsing throws Error(kParse)
// for malformed documents and the dist-core codes for invalid values.
Distribution ParseDistribution(std::string_view text);
Distribution LoadDistribution(const std::filesystem::path& path);

// Writes the canonical form: discrete or grid kind, every number at 17
// significant digits, one atom or density per line.
std::string SerializeDistribution(const Distribution& dist);
void SaveDistribution(const std::filesystem::path& path, const Distribution& dist);

// %.17g; "inf"/"-inf"/"nan" for non-finite values.
std::string FormatDouble(double value);

}  // namespace conflate
