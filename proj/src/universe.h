#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "conflate/distribution.h"

namespace conflate::internal {

// Sorted union of the stored keys of several discrete distributions.
inline std::vector<AtomKey> UnionKeys(std::initializer_list<const DiscreteDist*> dists) {
  std::vector<AtomKey> keys;
  for (const DiscreteDist* d : dists) {
    for (const Atom& a : d->atoms()) keys.push_back(a.key);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

// Masses of `d` laid out along `keys` (0 where absent).
inline std::vector<double> MassesOn(const DiscreteDist& d, const std::vector<AtomKey>& keys) {
  std::vector<double> out(keys.size(), 0.0);
  auto atoms = d.atoms();
  std::size_t j = 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    while (j < atoms.size() && atoms[j].key < keys[i]) ++j;
    if (j < atoms.size() && atoms[j].key == keys[i]) out[i] = atoms[j].mass;
  }
  return out;
}

}  // namespace conflate::internal
