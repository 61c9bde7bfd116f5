#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "conflate/distribution.h"

namespace conflate::cli {

// Ordered key/value report. Text form prints one `key=value` line per
// field with numbers at 17 significant digits; the JSON form is one object.
// Non-finite numbers are written as the strings "inf", "-inf", "nan".
class RunReport {
 public:
  using Value = nlohmann::ordered_json;

  void Set(const std::string& key, Value value) { fields_[key] = std::move(value); }
  void SetNumber(const std::string& key, double value);
  void AddInput(const std::filesystem::path& path, const std::string& digest);

  void Print(std::ostream& out, bool as_json) const;

 private:
  Value fields_ = Value::object();
};

RunReport::Value NumberValue(double value);
RunReport::Value DistributionValue(const Distribution& dist);

// FNV-1a 64-bit digest as 16 hex digits, of a byte string or a file.
std::string Digest(std::string_view bytes);
std::string FileDigest(const std::filesystem::path& path);

}  // namespace conflate::cli
