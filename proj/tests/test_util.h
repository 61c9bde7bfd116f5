#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "conflate/distribution.h"

namespace conflate::testing {

inline DiscreteDist Dist(std::vector<std::pair<std::string, double>> atoms) {
  std::vector<Atom> out;
  for (auto& [k, m] : atoms) out.push_back({AtomKey::Parse(k), m});
  return DiscreteDist::FromAtoms(std::move(out));
}

// Masses in key order 0, 1, 2, ...
inline DiscreteDist Dist(std::initializer_list<double> masses) {
  std::vector<Atom> out;
  long long k = 0;
  for (double m : masses) out.push_back({AtomKey::FromInteger(k++), m});
  return DiscreteDist::FromAtoms(std::move(out));
}

inline std::vector<double> Masses(const DiscreteDist& d) {
  std::vector<double> out;
  for (const Atom& a : d.atoms()) out.push_back(a.mass);
  return out;
}

struct CorpusPair {
  DiscreteDist prior;
  DiscreteDist likelihood;
};

// Random compatible pair whose joint support has exactly `joint` atoms.
// Up to `extra` further atoms are held by only one side, and some atoms are
// stored with zero mass, so supports differ the way real inputs do.
inline CorpusPair RandomPair(std::mt19937_64& rng, int joint, int extra = 0) {
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<Atom> prior;
  std::vector<Atom> likelihood;
  int key = 0;
  for (int i = 0; i < joint; ++i, ++key) {
    prior.push_back({AtomKey::FromInteger(key), mass(rng)});
    likelihood.push_back({AtomKey::FromInteger(key), mass(rng)});
  }
  for (int i = 0; i < extra; ++i, ++key) {
    // One side holds the atom; the other either omits it or stores a zero.
    auto& holder = coin(rng) ? prior : likelihood;
    auto& other = &holder == &prior ? likelihood : prior;
    holder.push_back({AtomKey::FromInteger(key), mass(rng)});
    if (coin(rng)) other.push_back({AtomKey::FromInteger(key), 0.0});
  }
  // Shuffle labels so the joint support is not always a key prefix.
  std::vector<int> labels(static_cast<std::size_t>(key));
  for (int i = 0; i < key; ++i) labels[static_cast<std::size_t>(i)] = i;
  std::shuffle(labels.begin(), labels.end(), rng);
  auto relabel = [&](std::vector<Atom>& atoms) {
    for (Atom& a : atoms) {
      const auto old = static_cast<std::size_t>(std::lround(a.key.value()));
      a.key = AtomKey::FromInteger(labels[old]);
    }
  };
  relabel(prior);
  relabel(likelihood);
  return {Normalize(std::move(prior)), Normalize(std::move(likelihood))};
}

// Random p.m.f. on the given keys.
inline DiscreteDist RandomOn(std::mt19937_64& rng, const std::vector<AtomKey>& keys) {
  std::exponential_distribution<double> e(1.0);
  std::vector<Atom> atoms;
  for (const AtomKey& k : keys) atoms.push_back({k, e(rng)});
  return Normalize(std::move(atoms));
}

inline std::vector<AtomKey> JointSupport(const DiscreteDist& p0, const DiscreteDist& pl) {
  std::vector<AtomKey> keys;
  for (const Atom& a : p0.atoms()) {
    if (a.mass > 0.0 && pl.MassAt(a.key) > 0.0) keys.push_back(a.key);
  }
  return keys;
}

inline double LInf(const DiscreteDist& a, const DiscreteDist& b) {
  double d = 0.0;
  for (const Atom& x : a.atoms()) d = std::max(d, std::abs(x.mass - b.MassAt(x.key)));
  for (const Atom& x : b.atoms()) d = std::max(d, std::abs(x.mass - a.MassAt(x.key)));
  return d;
}

}  // namespace conflate::testing
