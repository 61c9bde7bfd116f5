#include "conflate/conflation.h"

#include <cmath>
#include <map>

#include "conflate/error.h"
#include "loss_kernel.h"
#include "numeric.h"
#include "universe.h"

namespace conflate {
namespace {

[[noreturn]] void ThrowIncompatible(double overlap) {
  throw Error(ErrorCode::kIncompatible,
              "prior and likelihood are not compatible: overlap mass sum(p0*pL) = " +
                  std::to_string(overlap) + " (needs 0 < overlap < inf)");
}

bool IsCompatibleOverlap(double overlap) { return overlap > 0.0 && std::isfinite(overlap); }

using internal::WeightedProduct;

DiscreteDist WeightedDiscrete(const DiscreteDist& p0, const DiscreteDist& pl, double a,
                              double b) {
  std::vector<Atom> raw;
  for (const Atom& atom : p0.atoms()) {
    const double q = WeightedProduct(atom.mass, pl.MassAt(atom.key), a, b);
    if (q > 0.0) raw.push_back({atom.key, q});
  }
  const double total = internal::AccurateSum(raw, [](const Atom& x) { return x.mass; });
  if (!IsCompatibleOverlap(total)) {
    if (a == 1.0 && b == 1.0) ThrowIncompatible(total);
    throw Error(ErrorCode::kDegenerateProduct,
                "weighted product p0^a * pL^b has total mass " + std::to_string(total));
  }
  return Normalize(std::move(raw));
}

GridDensity WeightedGrid(const GridDensity& f0, const GridDensity& fl, double a, double b) {
  std::vector<double> raw(f0.cells());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = WeightedProduct(f0.densities()[i], fl.densities()[i], a, b);
  }
  const double total = f0.width() * internal::AccurateSum(raw);
  if (!IsCompatibleOverlap(total)) {
    if (a == 1.0 && b == 1.0) ThrowIncompatible(total);
    throw Error(ErrorCode::kDegenerateProduct,
                "weighted product f0^a * fL^b integrates to " + std::to_string(total));
  }
  return NormalizeGrid(f0.grid(), std::move(raw));
}

}  // namespace

WeightedPair::WeightedPair(Distribution prior, Distribution likelihood, double w0, double wl)
    : prior_(std::move(prior)), likelihood_(std::move(likelihood)), w0_(w0), wl_(wl) {
  if (!(w0 > 0.0) || !(wl > 0.0) || !std::isfinite(w0) || !std::isfinite(wl)) {
    throw Error(ErrorCode::kInvalidArgument, "weights must be positive and finite");
  }
  RequireSameRepresentation(prior_, likelihood_);
}

void RequireSameGrid(const GridDensity& a, const GridDensity& b) {
  if (!(a.grid() == b.grid())) {
    throw Error(ErrorCode::kRepresentationMismatch,
                "grid densities must share origin, width and cell count");
  }
}

void RequireSameRepresentation(const Distribution& a, const Distribution& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorCode::kRepresentationMismatch,
                "cannot combine a discrete distribution with a grid density");
  }
  if (const auto* ga = std::get_if<GridDensity>(&a)) {
    RequireSameGrid(*ga, std::get<GridDensity>(b));
  }
}

CompatibilityReport CheckCompatible(const DiscreteDist& p0, const DiscreteDist& pl) {
  internal::CompensatedSum overlap;
  for (const Atom& atom : p0.atoms()) overlap.Add(atom.mass * pl.MassAt(atom.key));
  const double mass = overlap.value();
  return {IsCompatibleOverlap(mass), mass};
}

CompatibilityReport CheckCompatible(const GridDensity& f0, const GridDensity& fl) {
  RequireSameGrid(f0, fl);
  internal::CompensatedSum overlap;
  for (std::size_t i = 0; i < f0.cells(); ++i) {
    overlap.Add(f0.densities()[i] * fl.densities()[i]);
  }
  const double mass = f0.width() * overlap.value();
  return {IsCompatibleOverlap(mass), mass};
}

CompatibilityReport CheckCompatible(const Distribution& p0, const Distribution& pl) {
  RequireSameRepresentation(p0, pl);
  return std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        return CheckCompatible(a, std::get<T>(pl));
      },
      p0);
}

DiscreteDist BayesPosterior(const DiscreteDist& p0, const DiscreteDist& pl) {
  return WeightedDiscrete(p0, pl, 1.0, 1.0);
}

GridDensity BayesPosterior(const GridDensity& f0, const GridDensity& fl) {
  RequireSameGrid(f0, fl);
  return WeightedGrid(f0, fl, 1.0, 1.0);
}

Distribution BayesPosterior(const Distribution& p0, const Distribution& pl) {
  RequireSameRepresentation(p0, pl);
  return std::visit(
      [&](const auto& a) -> Distribution {
        using T = std::decay_t<decltype(a)>;
        return BayesPosterior(a, std::get<T>(pl));
      },
      p0);
}

Distribution WeightedPosterior(const WeightedPair& pair) {
  const double a = pair.prior_exponent();
  const double b = pair.likelihood_exponent();
  if (const auto* d0 = std::get_if<DiscreteDist>(&pair.prior())) {
    if (!CheckCompatible(*d0, std::get<DiscreteDist>(pair.likelihood())).compatible) {
      ThrowIncompatible(0.0);
    }
    return WeightedDiscrete(*d0, std::get<DiscreteDist>(pair.likelihood()), a, b);
  }
  const auto& f0 = std::get<GridDensity>(pair.prior());
  const auto& fl = std::get<GridDensity>(pair.likelihood());
  if (!CheckCompatible(f0, fl).compatible) ThrowIncompatible(0.0);
  return WeightedGrid(f0, fl, a, b);
}

Distribution LinearPool(const Distribution& p0, const Distribution& pl) {
  RequireSameRepresentation(p0, pl);
  if (const auto* d0 = std::get_if<DiscreteDist>(&p0)) {
    const auto& dl = std::get<DiscreteDist>(pl);
    const std::vector<AtomKey> keys = internal::UnionKeys({d0, &dl});
    const std::vector<double> m0 = internal::MassesOn(*d0, keys);
    const std::vector<double> ml = internal::MassesOn(dl, keys);
    std::vector<Atom> raw;
    raw.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) raw.push_back({keys[i], 0.5 * (m0[i] + ml[i])});
    return Normalize(std::move(raw));
  }
  const auto& f0 = std::get<GridDensity>(p0);
  const auto& fl = std::get<GridDensity>(pl);
  std::vector<double> raw(f0.cells());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = 0.5 * (f0.densities()[i] + fl.densities()[i]);
  }
  return NormalizeGrid(f0.grid(), std::move(raw));
}

DiscreteDist AveragedDataPool(const DiscreteDist& p0, const DiscreteDist& pl) {
  std::map<AtomKey, internal::CompensatedSum> acc;
  for (const Atom& x : p0.atoms()) {
    if (x.mass <= 0.0) continue;
    for (const Atom& y : pl.atoms()) {
      if (y.mass <= 0.0) continue;
      acc[AtomKey::Midpoint(x.key, y.key)].Add(x.mass * y.mass);
    }
  }
  std::vector<Atom> raw;
  raw.reserve(acc.size());
  for (const auto& [key, mass] : acc) raw.push_back({key, mass.value()});
  return Normalize(std::move(raw));
}

bool ProportionalityCheck(const Distribution& candidate, const Distribution& p0,
                          const Distribution& pl, double tol) {
  RequireSameRepresentation(p0, pl);
  RequireSameRepresentation(candidate, p0);
  if (!CheckCompatible(p0, pl).compatible) ThrowIncompatible(0.0);

  std::vector<double> target;
  std::vector<double> product;
  if (const auto* d0 = std::get_if<DiscreteDist>(&p0)) {
    const auto& dl = std::get<DiscreteDist>(pl);
    const auto& dc = std::get<DiscreteDist>(candidate);
    const std::vector<AtomKey> keys = internal::UnionKeys({&dc, d0, &dl});
    target = internal::MassesOn(dc, keys);
    const std::vector<double> m0 = internal::MassesOn(*d0, keys);
    const std::vector<double> ml = internal::MassesOn(dl, keys);
    product.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) product[i] = m0[i] * ml[i];
  } else {
    const auto& f0 = std::get<GridDensity>(p0);
    const auto& fl = std::get<GridDensity>(pl);
    const auto& fc = std::get<GridDensity>(candidate);
    target.assign(fc.densities().begin(), fc.densities().end());
    product.resize(f0.cells());
    for (std::size_t i = 0; i < product.size(); ++i) {
      product[i] = f0.densities()[i] * fl.densities()[i];
    }
  }

  for (std::size_t i = 0; i < target.size(); ++i) {
    for (std::size_t j = i + 1; j < target.size(); ++j) {
      if (std::abs(target[i] * product[j] - target[j] * product[i]) > tol) return false;
    }
  }
  return true;
}

}  // namespace conflate
