#include "conflate/information.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <thread>

#include "conflate/error.h"
#include "loss_kernel.h"
#include "numeric.h"
#include "universe.h"

namespace conflate {
namespace {

[[noreturn]] void InvalidEvent(const std::string& why) {
  throw Error(ErrorCode::kInvalidEvent, "invalid event: " + why);
}

double InfoFromProbability(double p) {
  if (p <= 0.0) return INFINITY;
  return -std::log2(std::min(p, 1.0));
}

// Candidate masses (or densities) against the reference p0^a pL^b, laid out
// on a common index set, plus the labels needed to report a witness.
struct LossProblem {
  std::vector<double> candidate;
  std::vector<double> prior;
  std::vector<double> likelihood;
  std::vector<double> reference;
  double reference_total = 0.0;  // overlap mass (times width for grids)
  std::vector<AtomKey> keys;     // empty for grids
};

LossProblem BuildProblem(const Distribution& p1, const Distribution& p0,
                         const Distribution& pl, double a, double b) {
  RequireSameRepresentation(p0, pl);
  RequireSameRepresentation(p1, p0);
  LossProblem problem;
  double width = 1.0;
  std::vector<double>& m0 = problem.prior;
  std::vector<double>& ml = problem.likelihood;
  if (const auto* d0 = std::get_if<DiscreteDist>(&p0)) {
    const auto& dl = std::get<DiscreteDist>(pl);
    const auto& d1 = std::get<DiscreteDist>(p1);
    problem.keys = internal::UnionKeys({&d1, d0, &dl});
    problem.candidate = internal::MassesOn(d1, problem.keys);
    m0 = internal::MassesOn(*d0, problem.keys);
    ml = internal::MassesOn(dl, problem.keys);
  } else {
    const auto& g1 = std::get<GridDensity>(p1);
    problem.candidate.assign(g1.densities().begin(), g1.densities().end());
    const auto& g0 = std::get<GridDensity>(p0);
    const auto& gl = std::get<GridDensity>(pl);
    m0.assign(g0.densities().begin(), g0.densities().end());
    ml.assign(gl.densities().begin(), gl.densities().end());
    width = g0.width();
  }
  if (!CheckCompatible(p0, pl).compatible) {
    throw Error(ErrorCode::kIncompatible,
                "prior and likelihood are not compatible: overlap mass is 0");
  }
  problem.reference.resize(m0.size());
  for (std::size_t i = 0; i < m0.size(); ++i) {
    problem.reference[i] = internal::WeightedProduct(m0[i], ml[i], a, b);
  }
  problem.reference_total = width * internal::AccurateSum(problem.reference);
  if (!(problem.reference_total > 0.0) || !std::isfinite(problem.reference_total)) {
    throw Error(ErrorCode::kDegenerateProduct, "weighted product carries no mass");
  }
  return problem;
}

LossReport Finish(double value, Event witness, double reference_total) {
  LossReport report{value, std::move(witness), -std::log2(reference_total), false};
  report.attained = std::abs(report.value - report.lower_bound) <= kAttainmentTolerance;
  return report;
}

LossReport SingletonLoss(const Distribution& p1, const Distribution& p0,
                         const Distribution& pl, double a, double b) {
  const LossProblem problem = BuildProblem(p1, p0, pl, a, b);
  const internal::SingletonMax best =
      internal::MaxSingletonRatio(problem.candidate, problem.reference);
  Event witness = problem.keys.empty() ? Event::Cells({best.index})
                                       : Event::Atoms({problem.keys[best.index]});
  return Finish(std::log2(best.ratio), std::move(witness), problem.reference_total);
}

// Candidate event during enumeration, ordered so that Better() is a strict
// total order: larger ratio, then fewer atoms, then the lexicographically
// smaller ascending index list.
struct EventScore {
  double ratio = -1.0;
  std::uint32_t mask = 0;
};

bool Better(const EventScore& x, const EventScore& y) {
  if (x.ratio != y.ratio) return x.ratio > y.ratio;
  const int cx = std::popcount(x.mask);
  const int cy = std::popcount(y.mask);
  if (cx != cy) return cx < cy;
  const std::uint32_t diff = x.mask ^ y.mask;
  if (diff == 0) return false;
  const std::uint32_t lowest = diff & (~diff + 1);
  return (x.mask & lowest) != 0;
}

EventScore ScanMasks(const LossProblem& problem, double a, double b, std::uint32_t first,
                     std::uint32_t last) {
  const std::size_t n = problem.candidate.size();
  const std::vector<double>& m0 = problem.prior;
  const std::vector<double>& ml = problem.likelihood;
  EventScore best;
  for (std::uint32_t mask = first; mask < last; ++mask) {
    double p1 = 0.0;
    double q0 = 0.0;
    double ql = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        p1 += problem.candidate[i];
        q0 += m0[i];
        ql += ml[i];
      }
    }
    const double denom = internal::WeightedProduct(q0, ql, a, b);
    double ratio;
    if (denom > 0.0) {
      ratio = p1 / denom;
    } else if (p1 > 0.0) {
      ratio = INFINITY;
    } else {
      continue;
    }
    const EventScore score{ratio, mask};
    if (best.ratio < 0.0 || Better(score, best)) best = score;
  }
  return best;
}

LossReport ExhaustiveLoss(const DiscreteDist& p1, const DiscreteDist& p0,
                          const DiscreteDist& pl, double a, double b, unsigned workers) {
  const LossProblem problem = BuildProblem(p1, p0, pl, a, b);
  const std::size_t n = problem.keys.size();
  if (n > kMaxExhaustiveAtoms) {
    throw Error(ErrorCode::kTooLarge, "exhaustive enumeration limited to " +
                                          std::to_string(kMaxExhaustiveAtoms) +
                                          " atoms, got " + std::to_string(n));
  }
  const std::vector<AtomKey>& keys = problem.keys;

  const std::uint32_t end = std::uint32_t{1} << n;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  if (n < 14) workers = 1;
  const std::uint32_t chunk = (end - 1 + workers - 1) / workers;
  std::vector<EventScore> partial(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint32_t first = 1 + w * chunk;
    const std::uint32_t last = std::min(end, first + chunk);
    if (first >= last) continue;
    auto job = [&, w, first, last] {
      partial[w] = ScanMasks(problem, a, b, first, last);
    };
    if (workers == 1) {
      job();
    } else {
      threads.emplace_back(job);
    }
  }
  for (std::thread& t : threads) t.join();

  EventScore best;
  for (const EventScore& s : partial) {
    if (s.ratio < 0.0) continue;
    if (best.ratio < 0.0 || Better(s, best)) best = s;
  }
  std::vector<AtomKey> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (best.mask & (std::uint32_t{1} << i)) members.push_back(keys[i]);
  }
  return Finish(std::log2(best.ratio), Event::Atoms(std::move(members)),
                problem.reference_total);
}

}  // namespace

Event Event::Atoms(std::vector<AtomKey> keys) {
  if (keys.empty()) InvalidEvent("empty");
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return Event(std::move(keys));
}

Event Event::Cells(std::vector<std::size_t> cells) {
  if (cells.empty()) InvalidEvent("empty");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  return Event(std::move(cells));
}

Event Event::WholeSupport(const Distribution& dist) {
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    std::vector<AtomKey> keys;
    for (const Atom& a : d->atoms()) keys.push_back(a.key);
    return Atoms(std::move(keys));
  }
  std::vector<std::size_t> cells(std::get<GridDensity>(dist).cells());
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = i;
  return Cells(std::move(cells));
}

std::size_t Event::size() const {
  return is_discrete() ? atoms().size() : cells().size();
}

std::string Event::ToString() const {
  std::string out = "{";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i > 0) out += ",";
    out += is_discrete() ? atoms()[i].str() : std::to_string(cells()[i]);
  }
  return out + "}";
}

double Probability(const Distribution& dist, const Event& event) {
  internal::CompensatedSum total;
  if (const auto* d = std::get_if<DiscreteDist>(&dist)) {
    if (!event.is_discrete()) InvalidEvent("cell event on a discrete distribution");
    for (const AtomKey& key : event.atoms()) {
      if (!d->Contains(key)) InvalidEvent("atom " + key.str() + " is not in the support");
      total.Add(d->MassAt(key));
    }
    return total.value();
  }
  const auto& g = std::get<GridDensity>(dist);
  if (event.is_discrete()) InvalidEvent("atom event on a grid density");
  for (std::size_t cell : event.cells()) {
    if (cell >= g.cells()) InvalidEvent("cell " + std::to_string(cell) + " is off the grid");
    total.Add(g.densities()[cell]);
  }
  return g.width() * total.value();
}

double ShannonInfo(const Distribution& dist, const Event& event) {
  return InfoFromProbability(Probability(dist, event));
}

double CombinedInfo(const Distribution& p0, const Distribution& pl, const Event& event) {
  return ShannonInfo(p0, event) + ShannonInfo(pl, event);
}

double WeightedCombinedInfo(const WeightedPair& pair, const Event& event) {
  return pair.prior_exponent() * ShannonInfo(pair.prior(), event) +
         pair.likelihood_exponent() * ShannonInfo(pair.likelihood(), event);
}

LossReport MaxLoss(const Distribution& p1, const Distribution& p0, const Distribution& pl) {
  return SingletonLoss(p1, p0, pl, 1.0, 1.0);
}

LossReport WeightedMaxLoss(const Distribution& p1, const WeightedPair& pair) {
  return SingletonLoss(p1, pair.prior(), pair.likelihood(), pair.prior_exponent(),
                       pair.likelihood_exponent());
}

LossReport MaxLossExhaustive(const DiscreteDist& p1, const DiscreteDist& p0,
                             const DiscreteDist& pl, unsigned workers) {
  return ExhaustiveLoss(p1, p0, pl, 1.0, 1.0, workers);
}

LossReport WeightedMaxLossExhaustive(const DiscreteDist& p1, const WeightedPair& pair,
                                     unsigned workers) {
  const auto* p0 = std::get_if<DiscreteDist>(&pair.prior());
  if (p0 == nullptr) {
    throw Error(ErrorCode::kRepresentationMismatch, "exhaustive loss needs discrete inputs");
  }
  return ExhaustiveLoss(p1, *p0, std::get<DiscreteDist>(pair.likelihood()),
                        pair.prior_exponent(), pair.likelihood_exponent(), workers);
}

}  // namespace conflate
