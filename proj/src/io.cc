#include "conflate/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conflate/error.h"

namespace conflate {
namespace {

using nlohmann::json;

[[noreturn]] void ParseError(const std::string& why) {
  throw Error(ErrorCode::kParse, "distribution file: " + why);
}

const json& Field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) ParseError(std::string("missing field \"") + name + "\"");
  return *it;
}

double Number(const json& value, const char* what) {
  if (!value.is_number()) ParseError(std::string(what) + " must be a number");
  return value.get<double>();
}

DiscreteDist ParseDiscrete(const json& doc) {
  const json& atoms = Field(doc, "atoms");
  if (!atoms.is_array()) ParseError("\"atoms\" must be an array");
  std::vector<Atom> parsed;
  for (const json& item : atoms) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_string()) {
      ParseError("each atom must be a [\"key\", mass] pair with a string key");
    }
    parsed.push_back({AtomKey::Parse(item[0].get<std::string>()), Number(item[1], "mass")});
  }
  if (parsed.empty()) ParseError("\"atoms\" is empty");
  return DiscreteDist::FromAtoms(std::move(parsed));
}

GridDensity ParseGrid(const json& doc) {
  const json& densities = Field(doc, "densities");
  if (!densities.is_array()) ParseError("\"densities\" must be an array");
  std::vector<double> values;
  values.reserve(densities.size());
  for (const json& d : densities) values.push_back(Number(d, "density"));
  return GridDensity::FromDensities(Number(Field(doc, "origin"), "origin"),
                                    Number(Field(doc, "delta"), "delta"), std::move(values));
}

GridDensity ParseFamily(const json& doc) {
  const json& name = Field(doc, "family");
  if (!name.is_string()) ParseError("\"family\" must be a string");
  const auto family = FamilyFromName(name.get<std::string>());
  if (!family) ParseError("unknown family \"" + name.get<std::string>() + "\"");
  const json& params = Field(doc, "params");
  if (!params.is_object()) ParseError("\"params\" must be an object");
  auto param = [&](const char* key) { return Number(Field(params, key), key); };

  FamilySpec spec;
  switch (*family) {
    case Family::kGeometric: spec = FamilySpec::Geometric(param("p")); break;
    case Family::kNormal: spec = FamilySpec::Normal(param("mean"), param("sd")); break;
    case Family::kExponential: spec = FamilySpec::Exponential(param("rate")); break;
    case Family::kUniform: spec = FamilySpec::Uniform(param("a"), param("b")); break;
  }

  const json& grid = Field(doc, "grid");
  if (!grid.is_object()) ParseError("\"grid\" must be an object");
  const json& cells = Field(grid, "cells");
  if (!cells.is_number_unsigned() || cells.get<std::size_t>() == 0) {
    ParseError("\"cells\" must be a positive integer");
  }
  return Discretize(spec, {Number(Field(grid, "origin"), "origin"),
                           Number(Field(grid, "delta"), "delta"), cells.get<std::size_t>()});
}

std::string Quote(const std::string& s) { return json(s).dump(); }

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

Distribution ParseDistribution(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    ParseError(e.what());
  }
  if (!doc.is_object()) ParseError("top level must be an object");
  const json& kind = Field(doc, "kind");
  if (!kind.is_string()) ParseError("\"kind\" must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "discrete") return ParseDiscrete(doc);
  if (k == "grid") return ParseGrid(doc);
  if (k == "family") return ParseFamily(doc);
  ParseError("unknown kind \"" + k + "\"");
}

Distribution LoadDistribution(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseDistribution(buffer.str());
}

std::string SerializeDistribution(const Distribution& dist) {
  std::string out = "{\n";
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    out += "  \"kind\": \"discrete\",\n  \"atoms\": [";
    const auto atoms = d->atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      out += i == 0 ? "\n" : ",\n";
      out += "    [" + Quote(atoms[i].key.str()) + ", " + FormatDouble(atoms[i].mass) + "]";
    }
    out += "\n  ]\n}\n";
    return out;
  }
  const auto& g = std::get<GridDensity>(dist);
  out += "  \"kind\": \"grid\",\n";
  out += "  \"origin\": " + FormatDouble(g.origin()) + ",\n";
  out += "  \"delta\": " + FormatDouble(g.width()) + ",\n";
  out += "  \"densities\": [";
  for (std::size_t i = 0; i < g.cells(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    " + FormatDouble(g.densities()[i]);
  }
  out += "\n  ]\n}\n";
  return out;
}

void SaveDistribution(const std::filesystem::path& path, const Distribution& dist) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParse, "cannot write " + path.string());
  out << SerializeDistribution(dist);
}

}  // namespace conflate
