// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values are computed here independently of the library
// code paths they check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "conflate/conflation.h"
#include "conflate/distribution.h"
#include "conflate/error.h"
#include "conflate/information.h"
#include "conflate/io.h"
#include "conflate/mlr.h"
#include "conflate/oracle.h"
#include "test_util.h"

namespace conflate {
namespace {

using testing::CorpusPair;
using testing::Dist;
using testing::JointSupport;
using testing::LInf;
using testing::Masses;

struct Outcome {
  bool passed = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && passed) {
      passed = false;
      detail = what;
    }
  }
};

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Overlap sum computed directly from the stored atoms.
double Overlap(const DiscreteDist& p0, const DiscreteDist& pl) {
  double s = 0.0;
  for (const Atom& a : p0.atoms()) s += a.mass * pl.MassAt(a.key);
  return s;
}

// Posterior from the product formula, on the joint support.
DiscreteDist ProductPosterior(const DiscreteDist& p0, const DiscreteDist& pl, double a, double b) {
  std::vector<Atom> atoms;
  for (const AtomKey& k : JointSupport(p0, pl)) {
    atoms.push_back({k, std::pow(p0.MassAt(k), a) * std::pow(pl.MassAt(k), b)});
  }
  return Normalize(std::move(atoms));
}

std::vector<CorpusPair> Corpus(std::uint64_t seed, int count, int min_joint, int max_joint,
                               int max_extra) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> joint(min_joint, max_joint);
  std::vector<CorpusPair> corpus;
  for (int i = 0; i < count; ++i) {
    const int n = joint(rng);
    const int extra = std::uniform_int_distribution<int>(0, max_extra)(rng);
    corpus.push_back(testing::RandomPair(rng, n, extra));
  }
  return corpus;
}

Outcome ExampleOneBit() {
  Outcome o;
  const GridDensity u = Discretize(FamilySpec::Uniform(0.0, 1.0), GridSpec{0.0, 0.25, 4});
  const double bits = ShannonInfo(u, Event::Cells({0, 2}));
  o.Require(std::abs(bits - 1.0) <= 1e-12, "information " + FormatDouble(bits) + " bits");
  return o;
}

Outcome BoundAndAttainment() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CorpusPair> corpus = Corpus(2024, 60, 2, 6, 2);
  std::mt19937_64 rng(17);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusPair& c = corpus[i];
    const double bound = -std::log2(Overlap(c.prior, c.likelihood));
    const LossReport bayes = MaxLoss(BayesPosterior(c.prior, c.likelihood), c.prior, c.likelihood);
    o.Require(std::abs(bayes.value - bound) <= 1e-9,
              "pair " + std::to_string(i) + ": loss " + FormatDouble(bayes.value) +
                  " vs bound " + FormatDouble(bound));
    const std::vector<AtomKey> joint = JointSupport(c.prior, c.likelihood);
    for (int k = 0; k < 200; ++k) {
      const DiscreteDist alt = testing::RandomOn(rng, joint);
      const double loss = MaxLoss(alt, c.prior, c.likelihood).value;
      o.Require(loss > bound, "pair " + std::to_string(i) + ": alternative at " +
                                  FormatDouble(loss) + " does not exceed the bound");
    }
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 10.0, "runtime " + FormatDouble(elapsed) + " s");
  return o;
}

Outcome SingletonReduction() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  // Union universes stay at or below 12 atoms.
  std::vector<CorpusPair> corpus = Corpus(2024, 60, 2, 6, 2);
  const std::vector<CorpusPair> wide = Corpus(77, 12, 7, 10, 2);
  corpus.insert(corpus.end(), wide.begin(), wide.end());
  std::mt19937_64 rng(5);
  const double weights[] = {1.0, 2.0, 5.0};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusPair& c = corpus[i];
    const std::vector<DiscreteDist> candidates = {
        BayesPosterior(c.prior, c.likelihood),
        testing::RandomOn(rng, JointSupport(c.prior, c.likelihood)),
        c.prior,  // may carry mass off the joint support
    };
    for (const DiscreteDist& p1 : candidates) {
      const double fast = MaxLoss(p1, c.prior, c.likelihood).value;
      const double slow = MaxLossExhaustive(p1, c.prior, c.likelihood).value;
      o.Require(fast == slow || std::abs(fast - slow) <= 1e-12,
                "pair " + std::to_string(i) + ": " + FormatDouble(fast) + " vs exhaustive " +
                    FormatDouble(slow));
      for (double w0 : weights) {
        for (double wl : weights) {
          const WeightedPair pair(c.prior, c.likelihood, w0, wl);
          const double wfast = WeightedMaxLoss(p1, pair).value;
          const double wslow = WeightedMaxLossExhaustive(p1, pair).value;
          o.Require(wfast == wslow || std::abs(wfast - wslow) <= 1e-12,
                    "pair " + std::to_string(i) + " weights " + FormatDouble(w0) + ":" +
                        FormatDouble(wl) + ": " + FormatDouble(wfast) + " vs exhaustive " +
                        FormatDouble(wslow));
        }
      }
    }
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 60.0, "runtime " + FormatDouble(elapsed) + " s");
  return o;
}

std::vector<CorpusPair> ThreeAtomPairs() {
  std::vector<CorpusPair> pairs = {
      {Dist({1.0 / 3, 1.0 / 3, 1.0 / 3}), Dist({0.2, 0.3, 0.5})},
      {Dist({0.6, 0.3, 0.1}), Dist({0.1, 0.3, 0.6})},
      {Dist({0.05, 0.05, 0.9}), Dist({0.7, 0.2, 0.1})},
  };
  std::mt19937_64 rng(31);
  for (int i = 0; i < 3; ++i) pairs.push_back(testing::RandomPair(rng, 3, 1));
  return pairs;
}

Outcome ShannonOracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const double slack = std::log2(1.0 + 3.0 / 200.0);
  for (const CorpusPair& c : ThreeAtomPairs()) {
    const SearchResult r = MinimizeMaxLoss(c.prior, c.likelihood, 200);
    const DiscreteDist expected = ProductPosterior(c.prior, c.likelihood, 1.0, 1.0);
    const double bound = -std::log2(Overlap(c.prior, c.likelihood));
    o.Require(LInf(r.argmin, expected) <= 0.015,
              "argmin at L-inf " + FormatDouble(LInf(r.argmin, expected)));
    o.Require(r.min_value >= bound - 1e-12 && r.min_value - bound <= slack,
              "minimum " + FormatDouble(r.min_value) + " vs bound " + FormatDouble(bound));
  }
  const double elapsed = Seconds(start);
  o.Require(elapsed < 30.0, "runtime " + FormatDouble(elapsed) + " s");
  return o;
}

Outcome RatioFlatness() {
  Outcome o;
  const std::vector<CorpusPair> corpus = Corpus(2024, 60, 2, 6, 2);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusPair& c = corpus[i];
    const double spread = MlrSpread(BayesPosterior(c.prior, c.likelihood), c.prior, c.likelihood);
    o.Require(spread <= 1e-12, "pair " + std::to_string(i) + ": spread " + FormatDouble(spread));
  }
  for (const CorpusPair& c : ThreeAtomPairs()) {
    const SearchResult r = MinimizeMlrSpread(c.prior, c.likelihood, 200);
    const DiscreteDist expected = ProductPosterior(c.prior, c.likelihood, 1.0, 1.0);
    o.Require(LInf(r.argmin, expected) <= 0.015,
              "ratio oracle argmin at L-inf " + FormatDouble(LInf(r.argmin, expected)));
  }
  return o;
}

Outcome Proportionality() {
  Outcome o;
  const std::vector<CorpusPair> corpus = Corpus(2024, 60, 2, 6, 2);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const CorpusPair& c = corpus[i];
    o.Require(ProportionalityCheck(BayesPosterior(c.prior, c.likelihood), c.prior, c.likelihood,
                                   1e-12),
              "pair " + std::to_string(i) + ": posterior not proportional");
    // Random masses make p0 * pL and the average non-proportional.
    o.Require(!ProportionalityCheck(LinearPool(c.prior, c.likelihood), c.prior, c.likelihood,
                                     1e-12),
              "pair " + std::to_string(i) + ": averaged pool reported proportional");
  }
  // Identical uniform inputs: the average already is proportional.
  const DiscreteDist u = Dist({0.25, 0.25, 0.25, 0.25});
  o.Require(ProportionalityCheck(LinearPool(u, u), u, u, 1e-12),
            "uniform average not recognised as proportional");
  return o;
}

Outcome WeightedPosteriors() {
  Outcome o;
  const std::vector<CorpusPair> corpus = Corpus(2024, 60, 2, 6, 2);
  for (const CorpusPair& c : corpus) {
    for (double w : {1.0, 3.5, 7.0}) {
      const auto weighted = std::get<DiscreteDist>(WeightedPosterior({c.prior, c.likelihood, w, w}));
      o.Require(LInf(weighted, BayesPosterior(c.prior, c.likelihood)) <= 1e-12,
                "equal weights differ from the Bayes posterior");
    }
  }
  const DiscreteDist p0 = Dist({0.5, 0.5});
  const DiscreteDist pl = Dist({0.8, 0.2});
  const WeightedPair pair(p0, pl, 2.0, 1.0);
  const auto w = std::get<DiscreteDist>(WeightedPosterior(pair));
  // 0.5 sqrt(0.8) : 0.5 sqrt(0.2) = 2 : 1.
  o.Require(std::abs(Masses(w)[0] - 2.0 / 3) <= 1e-12 && std::abs(Masses(w)[1] - 1.0 / 3) <= 1e-12,
            "(2,1) posterior " + FormatDouble(Masses(w)[0]));
  const SearchResult r = MinimizeWeightedLoss(pair, 300);
  o.Require(LInf(r.argmin, w) <= 1.0 / 300 + 1e-12,
            "weighted oracle argmin at L-inf " + FormatDouble(LInf(r.argmin, w)));
  o.Require(r.min_value >= r.lower_bound - 1e-12, "weighted oracle below its bound");
  return o;
}

Outcome GaussianProduct() {
  Outcome o;
  const GridSpec grid{-8.0, 0.005, 3400};
  const GridDensity f0 = Discretize(FamilySpec::Normal(0.0, 1.0), grid);
  const GridDensity fl = Discretize(FamilySpec::Normal(1.0, 1.0), grid);
  const GridDensity post = BayesPosterior(f0, fl);
  // Completing the square: N(0,1) N(1,1) is proportional to N(1/2, 1/2).
  o.Require(std::abs(Mean(post) - 0.5) <= 0.01, "mean " + FormatDouble(Mean(post)));
  o.Require(std::abs(Variance(post) - 0.5) <= 0.01, "variance " + FormatDouble(Variance(post)));
  return o;
}

Outcome SmoothingPath() {
  Outcome o;
  const DiscreteDist a = Dist({{"0", 0.5}, {"1", 0.5}});
  const DiscreteDist b = Dist({{"2", 0.5}, {"3", 0.5}});
  o.Require(!CheckCompatible(a, b).compatible, "disjoint pair reported compatible");
  const GridSpec shared{-1.0, 0.25, 20};
  const GridDensity sa = SmoothUniform(a, 0.75, 0.25, shared);
  const GridDensity sb = SmoothUniform(b, 0.75, 0.25, shared);
  const CompatibilityReport report = CheckCompatible(sa, sb);
  // Bumps around 1 and 2 overlap on (1.25, 1.75): 0.5 * 0.5 * (1/1.5)^2 * 0.5.
  o.Require(report.compatible, "smoothed pair still incompatible");
  o.Require(std::abs(report.overlap_mass - 0.25 / 2.25 * 0.5) <= 1e-12,
            "overlap " + FormatDouble(report.overlap_mass));

  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / ("conflate_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  SaveDistribution((dir / "a.json").string(), a);
  SaveDistribution((dir / "b.json").string(), b);
  const std::string cli = CONFLATE_CLI_PATH;
  const std::string grid = " --epsilon 0.75 --delta 0.25 --origin -1 --cells 20";
  const std::string quiet = " > /dev/null 2>&1";
  auto run = [&](const std::string& args) { return std::system((cli + args + quiet).c_str()); };
  const std::string d = dir.string() + "/";
  o.Require(run(" posterior " + d + "a.json " + d + "b.json") != 0,
            "CLI combined the disjoint pair");
  o.Require(run(" smooth " + d + "a.json -o " + d + "sa.json" + grid) == 0, "smooth a failed");
  o.Require(run(" smooth " + d + "b.json -o " + d + "sb.json" + grid) == 0, "smooth b failed");
  o.Require(run(" posterior " + d + "sa.json " + d + "sb.json -o " + d + "post.json") == 0,
            "posterior of smoothed pair failed");
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace
}  // namespace conflate

int main() {
  using conflate::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"one-bit event information", conflate::ExampleOneBit},
      {"loss bound and attainment on random pairs", conflate::BoundAndAttainment},
      {"singleton reduction matches exhaustive search", conflate::SingletonReduction},
      {"simplex search finds the posterior", conflate::ShannonOracle},
      {"posterior has flat likelihood ratio", conflate::RatioFlatness},
      {"posterior is proportional to the product", conflate::Proportionality},
      {"weighted posterior", conflate::WeightedPosteriors},
      {"gaussian product on a grid", conflate::GaussianProduct},
      {"smoothing then combining", conflate::SmoothingPath},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double ms = conflate::Seconds(start) * 1000.0;
    std::printf("%s %zu %s (%.0f ms)%s%s\n", outcome.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), ms, outcome.passed ? "" : ": ",
                outcome.detail.c_str());
    if (!outcome.passed) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
