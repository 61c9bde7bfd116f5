#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace conflate::internal {

struct SingletonMax {
  double ratio = 0.0;  // +inf when candidate mass sits where reference is 0
  std::size_t index = 0;
};

// max_i candidate[i] / reference[i] over the reference support, scanning in
// index order so ties keep the first index. Entries with both values zero
// are skipped. Requires at least one positive reference entry.
inline SingletonMax MaxSingletonRatio(std::span<const double> candidate,
                                      std::span<const double> reference) {
  SingletonMax best{-1.0, 0};
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] > 0.0) continue;
    if (candidate[i] > 0.0) return {INFINITY, i};
  }
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] <= 0.0) continue;
    const double r = candidate[i] / reference[i];
    if (r > best.ratio) best = {r, i};
  }
  return best;
}

// Spread max - min of candidate[i] / reference[i] over the reference
// support. Caller guarantees candidate vanishes off that support.
inline double RatioSpread(std::span<const double> candidate,
                          std::span<const double> reference) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (reference[i] <= 0.0) continue;
    const double r = candidate[i] / reference[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi - lo;
}

// p0^a * pL^b, zero whenever either base is zero.
inline double WeightedProduct(double p0, double pl, double a, double b) {
  if (p0 <= 0.0 || pl <= 0.0) return 0.0;
  return std::pow(p0, a) * std::pow(pl, b);
}

}  // namespace conflate::internal
