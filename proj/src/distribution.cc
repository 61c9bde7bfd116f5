#include "conflate/distribution.h"

#include <algorithm>
#include <cmath>

#include "conflate/error.h"
#include "numeric.h"

namespace conflate {
namespace {

void CheckMasses(std::span<const Atom> atoms) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.mass)) {
      throw Error(ErrorCode::kNonFinite, "non-finite mass at atom " + a.key.str());
    }
    if (a.mass < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "negative mass at atom " + a.key.str());
    }
  }
}

void SortAndCheckKeys(std::vector<Atom>& atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i - 1].key == atoms[i].key) {
      throw Error(ErrorCode::kDuplicateKey, "duplicate atom key " + atoms[i].key.str());
    }
  }
}

void CheckDensities(std::span<const double> densities) {
  for (double d : densities) {
    if (!std::isfinite(d)) throw Error(ErrorCode::kNonFinite, "non-finite density");
    if (d < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative density");
  }
}

void CheckWidth(double width) {
  if (!std::isfinite(width) || width <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "cell width must be positive and finite");
  }
}

}  // namespace

DiscreteDist DiscreteDist::FromAtoms(std::vector<Atom> atoms) {
  CheckMasses(atoms);
  SortAndCheckKeys(atoms);
  const double total = internal::AccurateSum(atoms, [](const Atom& a) { return a.mass; });
  if (std::abs(total - 1.0) > kDiscreteTolerance) {
    throw Error(ErrorCode::kNotNormalized,
                "masses sum to " + std::to_string(total) + ", expected 1");
  }
  return DiscreteDist(std::move(atoms));
}

double DiscreteDist::MassAt(const AtomKey& key) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), key,
                             [](const Atom& a, const AtomKey& k) { return a.key < k; });
  return it != atoms_.end() && it->key == key ? it->mass : 0.0;
}

bool DiscreteDist::Contains(const AtomKey& key) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), key,
                             [](const Atom& a, const AtomKey& k) { return a.key < k; });
  return it != atoms_.end() && it->key == key;
}

DiscreteDist Normalize(std::vector<Atom> raw) {
  CheckMasses(raw);
  SortAndCheckKeys(raw);
  const double total = internal::AccurateSum(raw, [](const Atom& a) { return a.mass; });
  if (total <= 0.0) throw Error(ErrorCode::kAllZeroMass, "every mass is zero");
  if (!std::isfinite(total)) throw Error(ErrorCode::kNonFinite, "total mass overflows");
  if (!internal::EqualsOneWithinRounding(total, raw.size())) {
    for (Atom& a : raw) a.mass /= total;
  }
  return DiscreteDist(std::move(raw));
}

DiscreteDist Normalize(std::span<const std::pair<std::string, double>> raw) {
  std::vector<Atom> atoms;
  atoms.reserve(raw.size());
  for (const auto& [key, mass] : raw) atoms.push_back({AtomKey::Parse(key), mass});
  return Normalize(std::move(atoms));
}

GridDensity GridDensity::FromDensities(double origin, double width,
                                       std::vector<double> densities) {
  CheckWidth(width);
  if (!std::isfinite(origin)) throw Error(ErrorCode::kNonFinite, "non-finite origin");
  if (densities.empty()) throw Error(ErrorCode::kInvalidArgument, "grid has no cells");
  CheckDensities(densities);
  const double total = width * internal::AccurateSum(densities);
  if (std::abs(total - 1.0) > kGridTolerance) {
    throw Error(ErrorCode::kNotNormalized,
                "grid integrates to " + std::to_string(total) + ", expected 1");
  }
  GridSpec grid{origin, width, densities.size()};
  return GridDensity(grid, std::move(densities));
}

GridDensity NormalizeGrid(GridSpec grid, std::vector<double> raw) {
  CheckWidth(grid.width);
  if (raw.size() != grid.cells || raw.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "density count does not match grid");
  }
  CheckDensities(raw);
  const double total = grid.width * internal::AccurateSum(raw);
  if (total <= 0.0) throw Error(ErrorCode::kAllZeroMass, "grid carries no mass");
  if (!std::isfinite(total)) throw Error(ErrorCode::kNonFinite, "grid mass overflows");
  if (!internal::EqualsOneWithinRounding(total, raw.size())) {
    for (double& d : raw) d /= total;
  }
  return GridDensity(grid, std::move(raw));
}

double Mean(const GridDensity& g) {
  internal::CompensatedSum s;
  for (std::size_t i = 0; i < g.cells(); ++i) s.Add(g.grid().CellMid(i) * g.CellMass(i));
  return s.value();
}

double Variance(const GridDensity& g) {
  const double mean = Mean(g);
  internal::CompensatedSum s;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double d = g.grid().CellMid(i) - mean;
    s.Add(d * d * g.CellMass(i));
  }
  return s.value();
}

}  // namespace conflate
