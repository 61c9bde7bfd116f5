#include "conflate/mlr.h"

#include <algorithm>

#include "conflate/conflation.h"
#include "conflate/error.h"
#include "universe.h"

namespace conflate {

RatioProfile ComputeRatioProfile(const Distribution& p, const Distribution& p0,
                                 const Distribution& pl) {
  RequireSameRepresentation(p0, pl);
  RequireSameRepresentation(p, p0);
  if (!CheckCompatible(p0, pl).compatible) {
    throw Error(ErrorCode::kIncompatible,
                "prior and likelihood are not compatible: overlap mass is 0");
  }

  std::vector<std::string> labels;
  std::vector<double> candidate;
  std::vector<double> product;
  if (const auto* d0 = std::get_if<DiscreteDist>(&p0)) {
    const auto& dl = std::get<DiscreteDist>(pl);
    const auto& dp = std::get<DiscreteDist>(p);
    const std::vector<AtomKey> keys = internal::UnionKeys({&dp, d0, &dl});
    candidate = internal::MassesOn(dp, keys);
    const std::vector<double> m0 = internal::MassesOn(*d0, keys);
    const std::vector<double> ml = internal::MassesOn(dl, keys);
    for (std::size_t i = 0; i < keys.size(); ++i) {
      labels.push_back(keys[i].str());
      product.push_back(m0[i] * ml[i]);
    }
  } else {
    const auto& g0 = std::get<GridDensity>(p0);
    const auto& gl = std::get<GridDensity>(pl);
    const auto& gp = std::get<GridDensity>(p);
    candidate.assign(gp.densities().begin(), gp.densities().end());
    for (std::size_t i = 0; i < g0.cells(); ++i) {
      labels.push_back(std::to_string(i));
      product.push_back(g0.densities()[i] * gl.densities()[i]);
    }
  }

  RatioProfile profile;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t i = 0; i < product.size(); ++i) {
    if (product[i] <= 0.0) {
      if (candidate[i] > 0.0) {
        throw Error(ErrorCode::kUnsupportedMass,
                    "candidate has mass at " + labels[i] + " where p0 * pL = 0");
      }
      continue;
    }
    const double ratio = candidate[i] / product[i];
    profile.entries.push_back({labels[i], ratio});
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  profile.spread = hi - lo;
  return profile;
}

double MlrSpread(const Distribution& p, const Distribution& p0, const Distribution& pl) {
  return ComputeRatioProfile(p, p0, pl).spread;
}

}  // namespace conflate
