#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "conflate/conflation.h"
#include "conflate/distribution.h"

namespace conflate {

// Nonempty set of atoms (discrete) or whole grid cells (grid), kept sorted
// and duplicate-free.
class Event {
 public:
  static Event Atoms(std::vector<AtomKey> keys);
  static Event Cells(std::vector<std::size_t> cells);
  static Event WholeSupport(const Distribution& dist);

  bool is_discrete() const noexcept { return std::holds_alternative<Keys>(members_); }
  const std::vector<AtomKey>& atoms() const { return std::get<Keys>(members_); }
  const std::vector<std::size_t>& cells() const { return std::get<Indices>(members_); }
  std::size_t size() const;
  std::string ToString() const;

  friend bool operator==(const Event&, const Event&) = default;

 private:
  using Keys = std::vector<AtomKey>;
  using Indices = std::vector<std::size_t>;
  explicit Event(std::variant<Keys, Indices> members) : members_(std::move(members)) {}

  std::variant<Keys, Indices> members_;
};

// P(A); for grids, width * sum of densities over the cells of A. Throws
// kInvalidEvent if A names an atom not stored in P or a cell off the grid.
double Probability(const Distribution& dist, const Event& event);

// Self-information -log2 P(A) in bits; +inf when P(A) = 0.
double ShannonInfo(const Distribution& dist, const Event& event);

// S_P0(A) + S_L(A).
double CombinedInfo(const Distribution& p0, const Distribution& pl, const Event& event);

// a * S_P0(A) + b * S_L(A) with the pair's normalized exponents.
double WeightedCombinedInfo(const WeightedPair& pair, const Event& event);

struct LossReport {
  double value = 0.0;        // bits, may be +inf
  Event witness = Event::Cells({0});
  double lower_bound = 0.0;  // bits
  bool attained = false;
};

inline constexpr double kAttainmentTolerance = 1e-9;

// Largest excess of combined over posterior information,
//   max over events A of log2[ P1(A) / (P0(A) L(A)) ],
// evaluated through singletons: merging disjoint events never raises the
// ratio, so a one-atom event always attains the maximum. Mass of P1 where
// p0 * pL = 0 makes the loss +inf. Ties go to the smallest key.
//
// For grids the singleton ratio uses densities, f1 / (f0 fL), the
// small-event limit of the event ratio after dividing out cell width; the
// bound is then log2(1 / integral f0 fL).
//
// lower_bound = log2(1 / overlap mass). Throws kIncompatible.
LossReport MaxLoss(const Distribution& p1, const Distribution& p0, const Distribution& pl);

// Same functional with P0(A)^a L(A)^b in the denominator.
LossReport WeightedMaxLoss(const Distribution& p1, const WeightedPair& pair);

inline constexpr std::size_t kMaxExhaustiveAtoms = 20;

// Brute force over all 2^n - 1 nonempty events of the union of stored
// atoms of P1, P0 and L (discrete only). Throws kTooLarge above
// kMaxExhaustiveAtoms. Ties prefer fewer atoms, then lexicographically
// smaller key lists. workers = 0 picks the hardware concurrency.
LossReport MaxLossExhaustive(const DiscreteDist& p1, const DiscreteDist& p0,
                             const DiscreteDist& pl, unsigned workers = 0);
LossReport WeightedMaxLossExhaustive(const DiscreteDist& p1, const WeightedPair& pair,
                                     unsigned workers = 0);

}  // namespace conflate
