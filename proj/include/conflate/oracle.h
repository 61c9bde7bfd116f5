#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "conflate/conflation.h"
#include "conflate/distribution.h"

namespace conflate {

inline constexpr std::uint64_t kMaxSimplexPoints = 100'000'000;

// Probability vectors on n atoms whose coordinates are multiples of 1/K,
// i.e. the C(K + n - 1, n - 1) compositions of K into n parts.
class SimplexGrid {
 public:
  // Throws kInvalidArgument for n == 0 or K == 0 and kTooLarge when the
  // grid has more than kMaxSimplexPoints points.
  SimplexGrid(std::size_t n, int resolution);

  std::size_t atoms() const noexcept { return n_; }
  int resolution() const noexcept { return resolution_; }
  std::uint64_t size() const noexcept { return size_; }

  // Composition with the given lexicographic rank.
  std::vector<int> Unrank(std::uint64_t rank) const;
  // Advances to the lexicographic successor; false after the last one.
  static bool Next(std::span<int> composition);

  // Visits every composition in lexicographic order.
  void ForEach(const std::function<void(std::span<const int>)>& visit) const;
  // Materialized probability vectors; only sensible for small grids.
  std::vector<std::vector<double>> Enumerate() const;

 private:
  std::size_t n_;
  int resolution_;
  std::uint64_t size_;
};

// C(n, k) saturating at UINT64_MAX.
std::uint64_t Binomial(std::uint64_t n, std::uint64_t k);

enum class Objective { kShannon, kWeighted, kMlr };
std::string_view ObjectiveName(Objective objective);

struct SearchResult {
  Objective objective = Objective::kShannon;
  int resolution = 0;
  DiscreteDist argmin;         // on the joint support, zero atoms kept
  double min_value = 0.0;
  std::vector<double> runner_up;
  double runner_up_value = 0.0;  // +inf when the grid has a single point
  std::uint64_t evaluated_count = 0;
  DiscreteDist closed_form;    // Bayes or weighted posterior
  double distance = 0.0;       // L-inf between argmin and closed_form
  double lower_bound = 0.0;    // loss bound, or 0 for the MLR spread
  // Exhaustive-event loss of the argmin (NaN when skipped: MLR objective or
  // joint support above 12 atoms). Guards the singleton fast path.
  double exhaustive_value = 0.0;
};

// Grid resolution used when none is given.
int DefaultResolution(std::size_t atoms);

// Scans the simplex grid over the joint support of p0 and pL and returns
// the minimizer of the objective. Ties keep the lexicographically smallest
// composition; the scan is split into contiguous rank ranges over
// `workers` threads (0 = hardware concurrency) and the result does not
// depend on the split.
SearchResult MinimizeMaxLoss(const DiscreteDist& p0, const DiscreteDist& pl, int resolution,
                             unsigned workers = 0);
SearchResult MinimizeWeightedLoss(const WeightedPair& pair, int resolution,
                                  unsigned workers = 0);
SearchResult MinimizeMlrSpread(const DiscreteDist& p0, const DiscreteDist& pl, int resolution,
                               unsigned workers = 0);

}  // namespace conflate
