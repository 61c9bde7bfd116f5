#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "conflate/atom_key.h"

namespace conflate {

inline constexpr double kDiscreteTolerance = 1e-9;
inline constexpr double kGridTolerance = 1e-6;

struct Atom {
  AtomKey key;
  double mass = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

// Probability mass function on finitely many labeled atoms, sorted by key.
// Atoms with zero mass may be stored; they are part of the support
// universe but carry no probability.
class DiscreteDist {
 public:
  // Validates without rescaling: masses finite and >= 0, keys distinct,
  // |sum - 1| <= kDiscreteTolerance. Atoms are sorted by key.
  static DiscreteDist FromAtoms(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  // Mass at `key`, or 0 when the key is not stored.
  double MassAt(const AtomKey& key) const;
  bool Contains(const AtomKey& key) const;

  friend bool operator==(const DiscreteDist&, const DiscreteDist&) = default;

 private:
  explicit DiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  friend DiscreteDist Normalize(std::vector<Atom> raw);

  std::vector<Atom> atoms_;
};

// Uniform 1-D grid: cell i covers [origin + i*width, origin + (i+1)*width).
struct GridSpec {
  double origin = 0.0;
  double width = 1.0;
  std::size_t cells = 0;

  double CellLeft(std::size_t i) const { return origin + width * static_cast<double>(i); }
  double CellMid(std::size_t i) const {
    return origin + width * (static_cast<double>(i) + 0.5);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Piecewise-constant probability density on a GridSpec.
class GridDensity {
 public:
  // Validates: width > 0, densities finite and >= 0,
  // |width * sum - 1| <= kGridTolerance.
  static GridDensity FromDensities(double origin, double width,
                                   std::vector<double> densities);

  const GridSpec& grid() const noexcept { return grid_; }
  double origin() const noexcept { return grid_.origin; }
  double width() const noexcept { return grid_.width; }
  std::size_t cells() const noexcept { return grid_.cells; }
  std::span<const double> densities() const noexcept { return densities_; }

  // Probability of cell i, width * density.
  double CellMass(std::size_t i) const { return grid_.width * densities_[i]; }

  friend bool operator==(const GridDensity&, const GridDensity&) = default;

 private:
  GridDensity(GridSpec grid, std::vector<double> densities)
      : grid_(grid), densities_(std::move(densities)) {}
  friend GridDensity NormalizeGrid(GridSpec grid, std::vector<double> raw);

  GridSpec grid_;
  std::vector<double> densities_;
};

using Distribution = std::variant<DiscreteDist, GridDensity>;

// Divides raw masses by their total. Inputs whose total already equals 1
// to within rounding are returned unchanged, so Normalize is idempotent
// bit-for-bit. Throws kAllZeroMass, kNonFinite, kDuplicateKey.
DiscreteDist Normalize(std::vector<Atom> raw);
DiscreteDist Normalize(std::span<const std::pair<std::string, double>> raw);

// Grid analogue of Normalize: divides by width * sum(raw).
GridDensity NormalizeGrid(GridSpec grid, std::vector<double> raw);

enum class Family { kGeometric, kNormal, kExponential, kUniform };

// Named family. Parameter meaning by family:
//   geometric:   first = success probability p in (0, 1]
//   normal:      first = mean, second = standard deviation > 0
//   exponential: first = rate > 0
//   uniform:     first = a, second = b with a < b
// Geometric counts trials k = 1, 2, ...; on a continuous grid it is spread
// as the histogram density with value P(k) on (k - 1, k].
struct FamilySpec {
  Family family = Family::kNormal;
  double first = 0.0;
  double second = 1.0;

  static FamilySpec Geometric(double p) { return {Family::kGeometric, p, 0.0}; }
  static FamilySpec Normal(double mean, double sd) {
    return {Family::kNormal, mean, sd};
  }
  static FamilySpec Exponential(double rate) {
    return {Family::kExponential, rate, 0.0};
  }
  static FamilySpec Uniform(double a, double b) { return {Family::kUniform, a, b}; }

  // Throws kInvalidArgument when parameters are out of range.
  void Validate() const;
  double Pdf(double x) const;
  double Cdf(double x) const;
};

std::string_view FamilyName(Family family);
std::optional<Family> FamilyFromName(std::string_view name);

// Midpoint evaluation of the family density, renormalized on the grid.
// Throws kInsufficientCoverage when the grid holds less than 1 - 1e-6 of
// the family's mass.
GridDensity Discretize(const FamilySpec& spec, const GridSpec& grid);

// Convolution with the uniform density on (-epsilon, epsilon), averaged
// exactly over each output cell of width `cell_width`. 2 * epsilon must be
// an integer multiple of cell_width (kBadResolution otherwise).
//
// Without `target` the output grid is snapped to integer multiples of
// cell_width and spans the smoothed support. With `target` the caller
// fixes origin and cell count (its width must equal cell_width); if the
// target grid drops more than kGridTolerance of the mass the call throws
// kInsufficientCoverage.
GridDensity SmoothUniform(const Distribution& dist, double epsilon,
                          double cell_width,
                          const std::optional<GridSpec>& target = std::nullopt);

// Mass-weighted helpers used by tests and reports.
double Mean(const GridDensity& g);
double Variance(const GridDensity& g);

}  // namespace conflate
