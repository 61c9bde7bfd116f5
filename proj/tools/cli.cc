#include "cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <optional>

#include <CLI11.hpp>

#include "conflate/conflation.h"
#include "conflate/error.h"
#include "conflate/information.h"
#include "conflate/io.h"
#include "conflate/mlr.h"
#include "conflate/oracle.h"
#include "report.h"

namespace conflate::cli {
namespace {

struct Options {
  std::string command;
  std::string candidate;
  std::string prior;
  std::string likelihood;
  std::string input;
  std::string output;
  std::optional<double> w0;
  std::optional<double> wl;
  bool exhaustive = false;
  bool json = false;
  std::string objective = "shannon";
  std::optional<int> resolution;
  unsigned workers = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::optional<double> origin;
  std::optional<std::size_t> cells;
};

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIncompatible: return kIncompatibleInputs;
    case ErrorCode::kDegenerateProduct: return kDegenerateProduct;
    case ErrorCode::kTooLarge: return kTooLarge;
    case ErrorCode::kBadResolution: return kBadResolution;
    case ErrorCode::kUnsupportedMass: return kUnsupportedMass;
    default: return kParseFailure;
  }
}

bool Weighted(const Options& o) { return o.w0.has_value() || o.wl.has_value(); }

WeightedPair MakePair(const Options& o, Distribution p0, Distribution pl) {
  if (o.w0.has_value() != o.wl.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "--w0 and --wL must be given together");
  }
  return WeightedPair(std::move(p0), std::move(pl), o.w0.value_or(1.0), o.wl.value_or(1.0));
}

const DiscreteDist& RequireDiscrete(const Distribution& d, const char* what) {
  const auto* discrete = std::get_if<DiscreteDist>(&d);
  if (discrete == nullptr) {
    throw Error(ErrorCode::kRepresentationMismatch, std::string(what) + " must be discrete");
  }
  return *discrete;
}

// Reads the file once so the recorded digest matches the parsed bytes,
// even for pipes.
Distribution Load(const std::string& path, RunReport& report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParse, "cannot open " + path);
  const std::string bytes(std::istreambuf_iterator<char>(in), {});
  Distribution dist = ParseDistribution(bytes);
  report.AddInput(path, Digest(bytes));
  return dist;
}

void ReportLoss(RunReport& report, const LossReport& loss) {
  report.SetNumber("value_bits", loss.value);
  report.Set("witness", loss.witness.ToString());
  report.SetNumber("lower_bound_bits", loss.lower_bound);
  report.Set("attained", loss.attained);
}

int Posterior(const Options& o, RunReport& report) {
  Distribution p0 = Load(o.prior, report);
  Distribution pl = Load(o.likelihood, report);

  const CompatibilityReport compat = CheckCompatible(p0, pl);
  report.SetNumber("overlap_mass", compat.overlap_mass);
  report.SetNumber("lower_bound_bits", -std::log2(compat.overlap_mass));

  const WeightedPair pair = MakePair(o, std::move(p0), std::move(pl));
  const bool equal_weights = pair.w0() == pair.wl();
  Distribution posterior = equal_weights ? BayesPosterior(pair.prior(), pair.likelihood())
                                         : WeightedPosterior(pair);
  report.Set("rule", equal_weights ? "bayes" : "weighted");
  if (Weighted(o)) {
    report.SetNumber("w0", pair.w0());
    report.SetNumber("wL", pair.wl());
  }
  if (!equal_weights) {
    report.SetNumber("weighted_lower_bound_bits",
                     WeightedMaxLoss(posterior, pair).lower_bound);
  }
  if (o.output.empty()) {
    report.Set("posterior", DistributionValue(posterior));
  } else {
    SaveDistribution(o.output, posterior);
    report.Set("output", o.output);
    report.Set("output_fnv1a64", FileDigest(o.output));
  }
  return kOk;
}

int Loss(const Options& o, RunReport& report) {
  const Distribution p1 = Load(o.candidate, report);
  const Distribution p0 = Load(o.prior, report);
  const Distribution pl = Load(o.likelihood, report);
  const WeightedPair pair = MakePair(o, p0, pl);

  LossReport loss;
  if (o.exhaustive) {
    const DiscreteDist& d1 = RequireDiscrete(p1, "posterior");
    loss = WeightedMaxLossExhaustive(d1, pair, o.workers);
  } else {
    loss = WeightedMaxLoss(p1, pair);
  }
  report.Set("method", o.exhaustive ? "exhaustive" : "singleton");
  if (Weighted(o)) {
    report.SetNumber("w0", pair.w0());
    report.SetNumber("wL", pair.wl());
  }
  ReportLoss(report, loss);
  return kOk;
}

int Verify(const Options& o, RunReport& report) {
  const Distribution p0 = Load(o.prior, report);
  const Distribution pl = Load(o.likelihood, report);
  const DiscreteDist& d0 = RequireDiscrete(p0, "prior");
  const DiscreteDist& dl = RequireDiscrete(pl, "likelihood");
  if (!CheckCompatible(d0, dl).compatible) {
    throw Error(ErrorCode::kIncompatible,
                "prior and likelihood are not compatible: overlap mass is 0");
  }

  std::size_t n = 0;
  for (const Atom& a : d0.atoms()) n += a.mass > 0.0 && dl.MassAt(a.key) > 0.0;
  const int resolution = o.resolution.value_or(DefaultResolution(n));

  std::optional<SearchResult> result;
  if (o.objective == "shannon") {
    result = MinimizeMaxLoss(d0, dl, resolution, o.workers);
  } else if (o.objective == "mlr") {
    result = MinimizeMlrSpread(d0, dl, resolution, o.workers);
  } else {
    result = MinimizeWeightedLoss(MakePair(o, p0, pl), resolution, o.workers);
  }

  const double tolerance = static_cast<double>(n) / resolution;
  const bool passed = result->distance <= tolerance;
  report.Set("objective", std::string(ObjectiveName(result->objective)));
  report.Set("K", resolution);
  report.Set("atoms", n);
  report.Set("evaluated_count", result->evaluated_count);
  report.Set("argmin", DistributionValue(result->argmin));
  report.SetNumber("min_value", result->min_value);
  report.SetNumber("runner_up_value", result->runner_up_value);
  report.Set("closed_form", DistributionValue(result->closed_form));
  report.SetNumber("distance", result->distance);
  report.SetNumber("tolerance", tolerance);
  if (result->objective != Objective::kMlr) {
    report.SetNumber("lower_bound_bits", result->lower_bound);
    report.SetNumber("exhaustive_value_bits", result->exhaustive_value);
  }
  report.Set("passed", passed);
  return passed ? kOk : kVerificationFailed;
}

int Smooth(const Options& o, RunReport& report) {
  const Distribution input = Load(o.input, report);
  if (o.origin.has_value() != o.cells.has_value()) {
    throw Error(ErrorCode::kInvalidArgument, "--origin and --cells must be given together");
  }
  std::optional<GridSpec> target;
  if (o.origin) target = GridSpec{*o.origin, o.delta, *o.cells};
  const GridDensity smoothed = SmoothUniform(input, o.epsilon, o.delta, target);

  report.SetNumber("epsilon", o.epsilon);
  report.SetNumber("origin", smoothed.origin());
  report.SetNumber("delta", smoothed.width());
  report.Set("cells", smoothed.cells());
  if (o.output.empty()) {
    report.Set("smoothed", DistributionValue(smoothed));
  } else {
    SaveDistribution(o.output, smoothed);
    report.Set("output", o.output);
    report.Set("output_fnv1a64", FileDigest(o.output));
  }
  return kOk;
}

int Compat(const Options& o, RunReport& report) {
  const Distribution p0 = Load(o.prior, report);
  const Distribution pl = Load(o.likelihood, report);
  const CompatibilityReport compat = CheckCompatible(p0, pl);
  report.Set("compatible", compat.compatible);
  report.SetNumber("overlap_mass", compat.overlap_mass);
  if (compat.compatible) report.SetNumber("lower_bound_bits", -std::log2(compat.overlap_mass));
  return kOk;
}

int Mlr(const Options& o, RunReport& report) {
  const Distribution p = Load(o.candidate, report);
  const Distribution p0 = Load(o.prior, report);
  const Distribution pl = Load(o.likelihood, report);
  const RatioProfile profile = ComputeRatioProfile(p, p0, pl);
  RunReport::Value entries = RunReport::Value::array();
  for (const auto& e : profile.entries) {
    entries.push_back(RunReport::Value::array({e.label, NumberValue(e.ratio)}));
  }
  report.Set("ratios", std::move(entries));
  report.SetNumber("spread", profile.spread);
  return kOk;
}

void AddWeights(CLI::App* app, Options& o) {
  app->add_option("--w0", o.w0, "Prior weight (> 0)");
  app->add_option("--wL", o.wl, "Likelihood weight (> 0)");
}

}  // namespace

int Run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Combine prior and likelihood distributions into posteriors", "conflate"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit the report as JSON");

  CLI::App* posterior = app.add_subcommand("posterior", "Bayesian or weighted posterior");
  posterior->add_option("prior", o.prior)->required();
  posterior->add_option("likelihood", o.likelihood)->required();
  posterior->add_option("-o,--output", o.output, "Write the posterior to this file");
  AddWeights(posterior, o);

  CLI::App* loss = app.add_subcommand("loss", "Maximum loss of Shannon information");
  loss->add_option("posterior", o.candidate)->required();
  loss->add_option("prior", o.prior)->required();
  loss->add_option("likelihood", o.likelihood)->required();
  loss->add_flag("--exhaustive", o.exhaustive, "Enumerate every event (<= 20 atoms)");
  loss->add_option("--workers", o.workers, "Threads for --exhaustive (0 = all cores)");
  AddWeights(loss, o);

  CLI::App* verify = app.add_subcommand("verify", "Brute-force simplex search oracle");
  verify->add_option("prior", o.prior)->required();
  verify->add_option("likelihood", o.likelihood)->required();
  verify->add_option("--objective", o.objective)
      ->check(CLI::IsMember({"shannon", "weighted", "mlr"}));
  verify->add_option("-K,--K", o.resolution, "Grid resolution");
  verify->add_option("--workers", o.workers, "Threads (0 = all cores)");
  AddWeights(verify, o);

  CLI::App* smooth = app.add_subcommand("smooth", "Convolve with U(-epsilon, epsilon)");
  smooth->add_option("input", o.input)->required();
  smooth->add_option("--epsilon", o.epsilon)->required();
  smooth->add_option("--delta", o.delta, "Output cell width")->required();
  smooth->add_option("--origin", o.origin, "Output grid origin (with --cells)");
  smooth->add_option("--cells", o.cells, "Output cell count (with --origin)");
  smooth->add_option("-o,--output", o.output, "Write the smoothed grid to this file");

  CLI::App* compat = app.add_subcommand("compat", "Overlap mass and compatibility");
  compat->add_option("prior", o.prior)->required();
  compat->add_option("likelihood", o.likelihood)->required();

  CLI::App* mlr = app.add_subcommand("mlr", "Likelihood-ratio profile and spread");
  mlr->add_option("candidate", o.candidate)->required();
  mlr->add_option("prior", o.prior)->required();
  mlr->add_option("likelihood", o.likelihood)->required();

  for (CLI::App* sub : {posterior, loss, verify, smooth, compat, mlr}) {
    sub->add_flag("--json", o.json, "Emit the report as JSON");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  }

  RunReport report;
  std::string echo = "conflate";
  for (const std::string& a : args) echo += " " + a;
  report.Set("command", echo);

  const auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (posterior->parsed()) status = Posterior(o, report);
    if (loss->parsed()) status = Loss(o, report);
    if (verify->parsed()) status = Verify(o, report);
    if (smooth->parsed()) status = Smooth(o, report);
    if (compat->parsed()) status = Compat(o, report);
    if (mlr->parsed()) status = Mlr(o, report);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return ExitFor(e.code());
  }
  const std::chrono::duration<double, std::milli> elapsed =
      std::chrono::steady_clock::now() - start;
  report.SetNumber("elapsed_ms", elapsed.count());
  report.Print(out, o.json);
  return status;
}

}  // namespace conflate::cli
