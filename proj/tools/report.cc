#include "report.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "conflate/io.h"

namespace conflate::cli {
namespace {

void RenderText(const RunReport::Value& v, std::string& out) {
  switch (v.type()) {
    case RunReport::Value::value_t::number_float:
      out += FormatDouble(v.get<double>());
      break;
    case RunReport::Value::value_t::array: {
      out += "[";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ", ";
        first = false;
        RenderText(item, out);
      }
      out += "]";
      break;
    }
    case RunReport::Value::value_t::object: {
      out += "{";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ", ";
        first = false;
        out += key + ": ";
        RenderText(item, out);
      }
      out += "}";
      break;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

RunReport::Value NumberValue(double value) {
  if (!std::isfinite(value)) return FormatDouble(value);
  return value;
}

RunReport::Value DistributionValue(const Distribution& dist) {
  RunReport::Value v = RunReport::Value::object();
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    v["kind"] = "discrete";
    v["atoms"] = RunReport::Value::array();
    for (const Atom& a : d->atoms()) {
      v["atoms"].push_back(RunReport::Value::array({a.key.str(), a.mass}));
    }
    return v;
  }
  const auto& g = std::get<GridDensity>(dist);
  v["kind"] = "grid";
  v["origin"] = g.origin();
  v["delta"] = g.width();
  v["densities"] = RunReport::Value::array();
  for (double d : g.densities()) v["densities"].push_back(d);
  return v;
}

std::string Digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::string FileDigest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return Digest(std::string(std::istreambuf_iterator<char>(in), {}));
}

void RunReport::SetNumber(const std::string& key, double value) {
  fields_[key] = NumberValue(value);
}

void RunReport::AddInput(const std::filesystem::path& path, const std::string& digest) {
  if (!fields_.contains("inputs")) fields_["inputs"] = Value::array();
  fields_["inputs"].push_back({{"path", path.string()}, {"fnv1a64", digest}});
}

void RunReport::Print(std::ostream& out, bool as_json) const {
  if (as_json) {
    out << fields_.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : fields_.items()) {
    std::string line = key + "=";
    if (value.is_string()) {
      line += value.get<std::string>();
    } else {
      RenderText(value, line);
    }
    out << line << "\n";
  }
}

}  // namespace conflate::cli
