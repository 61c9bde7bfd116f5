#pragma once

#include <algorithm>

#include "conflate/distribution.h"

namespace conflate {

struct CompatibilityReport {
  bool compatible = false;
  // sum of p0 * pL over shared atoms, or width * sum of f0 * fL over cells.
  double overlap_mass = 0.0;
};

// Prior and likelihood with strictly positive weights. Only the weight
// ratio matters: exponents are w / max(w0, wL).
class WeightedPair {
 public:
  // Throws kInvalidArgument for non-positive or non-finite weights and
  // kRepresentationMismatch when the members differ in kind or grid.
  WeightedPair(Distribution prior, Distribution likelihood, double w0, double wl);

  const Distribution& prior() const noexcept { return prior_; }
  const Distribution& likelihood() const noexcept { return likelihood_; }
  double w0() const noexcept { return w0_; }
  double wl() const noexcept { return wl_; }
  double prior_exponent() const noexcept { return w0_ / std::max(w0_, wl_); }
  double likelihood_exponent() const noexcept { return wl_ / std::max(w0_, wl_); }

 private:
  Distribution prior_;
  Distribution likelihood_;
  double w0_;
  double wl_;
};

// Throws kRepresentationMismatch unless both are discrete, or both are
// grids over the identical GridSpec.
void RequireSameRepresentation(const Distribution& a, const Distribution& b);
void RequireSameGrid(const GridDensity& a, const GridDensity& b);

CompatibilityReport CheckCompatible(const DiscreteDist& p0, const DiscreteDist& pl);
CompatibilityReport CheckCompatible(const GridDensity& f0, const GridDensity& fl);
CompatibilityReport CheckCompatible(const Distribution& p0, const Distribution& pl);

// Posterior proportional to p0 * pL. Discrete output holds only the joint
// support {p0 * pL > 0}. Throws kIncompatible.
DiscreteDist BayesPosterior(const DiscreteDist& p0, const DiscreteDist& pl);
GridDensity BayesPosterior(const GridDensity& f0, const GridDensity& fl);
Distribution BayesPosterior(const Distribution& p0, const Distribution& pl);

// Posterior proportional to p0^a * pL^b, a = w0 / max, b = wL / max.
// Throws kDegenerateProduct when the weighted product has no mass.
Distribution WeightedPosterior(const WeightedPair& pair);

// (p0 + pL) / 2 over the union of stored atoms, or cellwise for grids.
Distribution LinearPool(const Distribution& p0, const Distribution& pl);

// Law of (X0 + XL) / 2 for independent X0 ~ p0, XL ~ pL.
DiscreteDist AveragedDataPool(const DiscreteDist& p0, const DiscreteDist& pl);

// True iff p*(a) * q(b) and p*(b) * q(a) agree within `tol` for every pair
// of atoms (cells) a, b in the union universe, where q = p0 * pL. Throws
// kIncompatible when p0, pL are not compatible.
bool ProportionalityCheck(const Distribution& candidate, const Distribution& p0,
                          const Distribution& pl, double tol);

}  // namespace conflate
