#pragma once

#include <string>
#include <vector>

#include "conflate/distribution.h"

namespace conflate {

// Ratio p / (p0 pL) at every point of the joint support {p0 pL > 0}.
// Off the joint support the product vanishes and, with p also zero there,
// the ratio would be 0/0; those points are left out of the profile.
struct RatioProfile {
  struct Entry {
    std::string label;  // atom key, or cell index for grids
    double ratio = 0.0;
  };
  std::vector<Entry> entries;
  double spread = 0.0;  // max ratio - min ratio
};

// Grid inputs use densities, so the max/min are the essential sup/inf of
// the piecewise-constant ratio. Throws kIncompatible, or kUnsupportedMass
// when P puts mass where p0 pL = 0.
RatioProfile ComputeRatioProfile(const Distribution& p, const Distribution& p0,
                                 const Distribution& pl);

double MlrSpread(const Distribution& p, const Distribution& p0, const Distribution& pl);

}  // namespace conflate
