#include "conflate/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "conflate/error.h"
#include "conflate/information.h"
#include "loss_kernel.h"

namespace conflate {
namespace {

constexpr std::size_t kExhaustiveCheckAtoms = 12;

struct Scored {
  double value = INFINITY;
  std::uint64_t rank = std::numeric_limits<std::uint64_t>::max();

  bool operator<(const Scored& o) const {
    return value != o.value ? value < o.value : rank < o.rank;
  }
};

struct Best2 {
  Scored first;
  Scored second;

  void Offer(const Scored& s) {
    if (s < first) {
      second = first;
      first = s;
    } else if (s < second) {
      second = s;
    }
  }
};

// The fixed reference r_i over the joint support, and its keys.
struct SearchProblem {
  Objective objective;
  std::vector<AtomKey> keys;
  std::vector<double> reference;
  double prior_exponent = 1.0;
  double likelihood_exponent = 1.0;
};

SearchProblem BuildSearch(Objective objective, const DiscreteDist& p0, const DiscreteDist& pl,
                          double a, double b) {
  if (!CheckCompatible(p0, pl).compatible) {
    throw Error(ErrorCode::kIncompatible,
                "prior and likelihood are not compatible: overlap mass is 0");
  }
  SearchProblem problem{objective, {}, {}, a, b};
  for (const Atom& atom : p0.atoms()) {
    const double r = internal::WeightedProduct(atom.mass, pl.MassAt(atom.key), a, b);
    if (r > 0.0) {
      problem.keys.push_back(atom.key);
      problem.reference.push_back(r);
    }
  }
  return problem;
}

double Evaluate(const SearchProblem& problem, std::span<const double> q) {
  if (problem.objective == Objective::kMlr) return internal::RatioSpread(q, problem.reference);
  return internal::MaxSingletonRatio(q, problem.reference).ratio;
}

Best2 ScanRange(const SearchProblem& problem, const SimplexGrid& grid, std::uint64_t first,
                std::uint64_t last) {
  Best2 best;
  std::vector<int> composition = grid.Unrank(first);
  std::vector<double> q(composition.size());
  const double scale = 1.0 / grid.resolution();
  for (std::uint64_t rank = first; rank < last; ++rank) {
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = composition[i] * scale;
    best.Offer({Evaluate(problem, q), rank});
    SimplexGrid::Next(composition);
  }
  return best;
}

DiscreteDist OnKeys(const std::vector<AtomKey>& keys, std::span<const int> composition,
                    int resolution) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    atoms.push_back({keys[i], static_cast<double>(composition[i]) / resolution});
  }
  return DiscreteDist::FromAtoms(std::move(atoms));
}

SearchResult Search(const SearchProblem& problem, int resolution, unsigned workers,
                    DiscreteDist closed_form, const DiscreteDist& p0, const DiscreteDist& pl) {
  const SimplexGrid grid(problem.keys.size(), resolution);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, grid.size()));
  const std::uint64_t chunk = (grid.size() + workers - 1) / workers;

  std::vector<Best2> partial(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = w * chunk;
    const std::uint64_t last = std::min(grid.size(), first + chunk);
    if (first >= last) continue;
    auto job = [&, w, first, last] { partial[w] = ScanRange(problem, grid, first, last); };
    if (workers == 1) {
      job();
    } else {
      threads.emplace_back(job);
    }
  }
  for (std::thread& t : threads) t.join();

  Best2 best;
  for (const Best2& b : partial) {
    best.Offer(b.first);
    best.Offer(b.second);
  }

  const std::vector<int> winner = grid.Unrank(best.first.rank);
  DiscreteDist argmin = OnKeys(problem.keys, winner, resolution);
  std::vector<double> runner_up;
  if (best.second.rank != std::numeric_limits<std::uint64_t>::max()) {
    for (int c : grid.Unrank(best.second.rank)) {
      runner_up.push_back(static_cast<double>(c) / resolution);
    }
  }

  double distance = 0.0;
  for (const Atom& atom : argmin.atoms()) {
    distance = std::max(distance, std::abs(atom.mass - closed_form.MassAt(atom.key)));
  }

  const bool is_loss = problem.objective != Objective::kMlr;
  double total = 0.0;
  for (double r : problem.reference) total += r;
  const double lower_bound = is_loss ? -std::log2(total) : 0.0;
  const auto to_value = [is_loss](double v) { return is_loss ? std::log2(v) : v; };

  double exhaustive = std::numeric_limits<double>::quiet_NaN();
  if (is_loss && problem.keys.size() <= kExhaustiveCheckAtoms) {
    const WeightedPair pair(p0, pl, problem.prior_exponent, problem.likelihood_exponent);
    exhaustive = WeightedMaxLossExhaustive(argmin, pair, 1).value;
  }

  return SearchResult{
      problem.objective,
      resolution,
      std::move(argmin),
      to_value(best.first.value),
      std::move(runner_up),
      to_value(best.second.value),
      grid.size(),
      std::move(closed_form),
      distance,
      lower_bound,
      exhaustive,
  };
}

}  // namespace

std::uint64_t Binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(result);
}

SimplexGrid::SimplexGrid(std::size_t n, int resolution) : n_(n), resolution_(resolution) {
  if (n == 0 || resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument, "simplex grid needs n >= 1 and K >= 1");
  }
  size_ = Binomial(static_cast<std::uint64_t>(resolution) + n - 1, n - 1);
  if (size_ > kMaxSimplexPoints) {
    throw Error(ErrorCode::kTooLarge, "simplex grid with n = " + std::to_string(n) +
                                          ", K = " + std::to_string(resolution) +
                                          " exceeds " + std::to_string(kMaxSimplexPoints) +
                                          " points");
  }
}

std::vector<int> SimplexGrid::Unrank(std::uint64_t rank) const {
  std::vector<int> out(n_, 0);
  int remaining = resolution_;
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const std::uint64_t tail_parts = n_ - i - 1;
    for (int c = 0; c <= remaining; ++c) {
      const std::uint64_t count =
          Binomial(static_cast<std::uint64_t>(remaining - c) + tail_parts - 1, tail_parts - 1);
      if (rank < count) {
        out[i] = c;
        remaining -= c;
        break;
      }
      rank -= count;
    }
  }
  out[n_ - 1] = remaining;
  return out;
}

bool SimplexGrid::Next(std::span<int> composition) {
  const std::size_t n = composition.size();
  if (n < 2) return false;
  int tail = composition[n - 1];
  std::size_t i = n - 1;
  while (i > 0) {
    --i;
    if (tail > 0) {
      composition[i] += 1;
      for (std::size_t j = i + 1; j + 1 < n; ++j) composition[j] = 0;
      composition[n - 1] = tail - 1;
      return true;
    }
    tail += composition[i];
  }
  return false;
}

void SimplexGrid::ForEach(const std::function<void(std::span<const int>)>& visit) const {
  std::vector<int> composition(n_, 0);
  composition[n_ - 1] = resolution_;
  do {
    visit(composition);
  } while (Next(composition));
}

std::vector<std::vector<double>> SimplexGrid::Enumerate() const {
  std::vector<std::vector<double>> out;
  out.reserve(size_);
  ForEach([&](std::span<const int> c) {
    std::vector<double> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = static_cast<double>(c[i]) / resolution_;
    out.push_back(std::move(q));
  });
  return out;
}

std::string_view ObjectiveName(Objective objective) {
  switch (objective) {
    case Objective::kShannon: return "shannon";
    case Objective::kWeighted: return "weighted";
    case Objective::kMlr: return "mlr";
  }
  return "unknown";
}

int DefaultResolution(std::size_t atoms) {
  if (atoms <= 3) return 200;
  if (atoms <= 5) return 60;
  int k = 60;
  while (k > 1 && Binomial(static_cast<std::uint64_t>(k) + atoms - 1, atoms - 1) >
                      kMaxSimplexPoints) {
    --k;
  }
  return k;
}

SearchResult MinimizeMaxLoss(const DiscreteDist& p0, const DiscreteDist& pl, int resolution,
                             unsigned workers) {
  const SearchProblem problem = BuildSearch(Objective::kShannon, p0, pl, 1.0, 1.0);
  return Search(problem, resolution, workers, BayesPosterior(p0, pl), p0, pl);
}

SearchResult MinimizeWeightedLoss(const WeightedPair& pair, int resolution, unsigned workers) {
  const auto* p0 = std::get_if<DiscreteDist>(&pair.prior());
  if (p0 == nullptr) {
    throw Error(ErrorCode::kRepresentationMismatch, "simplex search needs discrete inputs");
  }
  const auto& pl = std::get<DiscreteDist>(pair.likelihood());
  const SearchProblem problem = BuildSearch(Objective::kWeighted, *p0, pl,
                                            pair.prior_exponent(), pair.likelihood_exponent());
  return Search(problem, resolution, workers, std::get<DiscreteDist>(WeightedPosterior(pair)),
                *p0, pl);
}

SearchResult MinimizeMlrSpread(const DiscreteDist& p0, const DiscreteDist& pl, int resolution,
                               unsigned workers) {
  const SearchProblem problem = BuildSearch(Objective::kMlr, p0, pl, 1.0, 1.0);
  return Search(problem, resolution, workers, BayesPosterior(p0, pl), p0, pl);
}

}  // namespace conflate
