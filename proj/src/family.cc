#include <cmath>
#include <numbers>

#include "conflate/distribution.h"
#include "conflate/error.h"

namespace conflate {

std::string_view FamilyName(Family family) {
  switch (family) {
    case Family::kGeometric: return "geometric";
    case Family::kNormal: return "normal";
    case Family::kExponential: return "exponential";
    case Family::kUniform: return "uniform";
  }
  return "unknown";
}

std::optional<Family> FamilyFromName(std::string_view name) {
  if (name == "geometric") return Family::kGeometric;
  if (name == "normal") return Family::kNormal;
  if (name == "exponential") return Family::kExponential;
  if (name == "uniform") return Family::kUniform;
  return std::nullopt;
}

void FamilySpec::Validate() const {
  auto fail = [this](const char* what) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(FamilyName(family)) + ": " + what);
  };
  if (!std::isfinite(first) || !std::isfinite(second)) fail("non-finite parameter");
  switch (family) {
    case Family::kGeometric:
      if (!(first > 0.0 && first <= 1.0)) fail("success probability must be in (0, 1]");
      break;
    case Family::kNormal:
      if (!(second > 0.0)) fail("standard deviation must be positive");
      break;
    case Family::kExponential:
      if (!(first > 0.0)) fail("rate must be positive");
      break;
    case Family::kUniform:
      if (!(first < second)) fail("requires a < b");
      break;
  }
}

double FamilySpec::Pdf(double x) const {
  switch (family) {
    case Family::kGeometric: {
      if (x <= 0.0) return 0.0;
      const double k = std::ceil(x);
      return std::pow(1.0 - first, k - 1.0) * first;
    }
    case Family::kNormal: {
      const double z = (x - first) / second;
      return std::exp(-0.5 * z * z) / (second * std::sqrt(2.0 * std::numbers::pi));
    }
    case Family::kExponential:
      return x < 0.0 ? 0.0 : first * std::exp(-first * x);
    case Family::kUniform:
      return x < first || x > second ? 0.0 : 1.0 / (second - first);
  }
  return 0.0;
}

double FamilySpec::Cdf(double x) const {
  switch (family) {
    case Family::kGeometric: {
      if (x <= 0.0) return 0.0;
      const double k = std::floor(x);
      const double tail = std::pow(1.0 - first, k);
      return 1.0 - tail + (x - k) * tail * first;
    }
    case Family::kNormal:
      return 0.5 * std::erfc(-(x - first) / (second * std::numbers::sqrt2));
    case Family::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-first * x);
    case Family::kUniform:
      if (x <= first) return 0.0;
      if (x >= second) return 1.0;
      return (x - first) / (second - first);
  }
  return 0.0;
}

GridDensity Discretize(const FamilySpec& spec, const GridSpec& grid) {
  spec.Validate();
  if (grid.cells == 0 || !(grid.width > 0.0) || !std::isfinite(grid.width) ||
      !std::isfinite(grid.origin)) {
    throw Error(ErrorCode::kInvalidArgument, "grid must have cells and positive width");
  }
  const double right = grid.CellLeft(grid.cells);
  const double covered = spec.Cdf(right) - spec.Cdf(grid.origin);
  if (covered < 1.0 - kGridTolerance) {
    throw Error(ErrorCode::kInsufficientCoverage,
                "grid covers only " + std::to_string(covered) + " of the " +
                    std::string(FamilyName(spec.family)) + " mass");
  }
  std::vector<double> raw(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) raw[i] = spec.Pdf(grid.CellMid(i));
  return NormalizeGrid(grid, std::move(raw));
}

}  // namespace conflate
