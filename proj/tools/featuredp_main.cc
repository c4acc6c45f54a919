// Copyright 2026 The FeatureDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Command-line front end: accounting queries, calibration, training,
// sweeps, audits, synthetic data and reports.

#include <omp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "featuredp/audit/game.h"
#include "featuredp/audit/nonamplification.h"
#include "featuredp/audit/scalar_problem.h"
#include "featuredp/audit/suite.h"
#include "featuredp/common/errors.h"
#include "featuredp/harness/dataset.h"
#include "featuredp/harness/report.h"
#include "featuredp/harness/sweep.h"
#include "featuredp/harness/synth.h"
#include "featuredp/sgd/serialization.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/curve.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace fdp {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAuditFailed = 3;
constexpr int kCliSchemaVersion = 1;

struct Globals {
  uint64_t seed = 0;
  std::string out_dir = ".";
  int workers = 1;
};

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void WriteText(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void PrintJson(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// Dataset from {"csv", "manifest"} (paths relative to base) or
// {"synth": {kind, size, dims, seed, ...}}.
LoadedDataset LoadDatasetSpec(const json& spec, const fs::path& base,
                              std::string* default_split) {
  if (spec.contains("synth")) {
    const json& s = spec["synth"];
    SynthOptions o;
    o.kind = ParseSynthKind(s.at("kind").get<std::string>());
    o.size = s.value("size", o.size);
    o.dims = s.value("dims", o.dims);
    o.seed = s.value("seed", o.seed);
    o.num_public = s.value("num_public", o.num_public);
    o.num_classes = s.value("num_classes", o.num_classes);
    o.margin = s.value("margin", o.margin);
    o.lambda = s.value("lambda", o.lambda);
    o.density = s.value("density", o.density);
    o.private_signal = s.value("private_signal", o.private_signal);
    o.label_noise = s.value("label_noise", o.label_noise);
    SynthResult r = SynthGenerate(o);
    if (default_split) *default_split = r.default_split;
    return std::move(r.dataset);
  }
  if (!spec.contains("csv") || !spec.contains("manifest")) {
    throw SchemaError("dataset needs either 'synth' or both 'csv' and 'manifest'");
  }
  fs::path csv = spec["csv"].get<std::string>();
  fs::path manifest = spec["manifest"].get<std::string>();
  if (csv.is_relative()) csv = base / csv;
  if (manifest.is_relative()) manifest = base / manifest;
  if (default_split) *default_split = "padding";
  return LoadDataset(csv.string(), manifest.string());
}

int RunAccount(const Globals&, const std::string& mechanism, double sigma,
               double p, long steps, double delta, double sensitivity,
               const std::string& curve_out) {
  MechanismSpec spec;
  spec.sensitivity = sensitivity;
  spec.sigma = sigma;
  spec.sampling_prob = mechanism == "gaussian" ? 1.0 : p;
  spec.steps = steps;
  if (mechanism != "gaussian" && mechanism != "subsampled-gaussian") {
    throw DomainError("unknown mechanism '" + mechanism + "'");
  }
  spec.Validate();
  TradeoffCurve curve = mechanism == "gaussian"
                            ? GaussianTradeoff(std::sqrt(static_cast<double>(steps)) *
                                               sensitivity / sigma)
                            : AccountSubsampledGaussian(spec);
  double eps = ToEpsilon(curve, delta);
  if (!curve_out.empty()) WriteText(curve_out, curve.ToJson().dump() + "\n");
  PrintJson({{"schema_version", kCliSchemaVersion},
             {"mechanism", mechanism},
             {"sigma", sigma},
             {"sampling_prob", spec.sampling_prob},
             {"steps", steps},
             {"sensitivity", sensitivity},
             {"delta", delta},
             {"epsilon", EpsilonToJson(eps)}});
  return kExitOk;
}

int RunCalibrate(double epsilon, double delta, double p, long steps,
                 double sensitivity) {
  CalibrationResult r =
      CalibrateSigmaDetailed({epsilon, delta}, p, steps, sensitivity);
  PrintJson({{"schema_version", kCliSchemaVersion},
             {"target_epsilon", epsilon},
             {"delta", delta},
             {"sampling_prob", p},
             {"steps", steps},
             {"sensitivity", sensitivity},
             {"sigma", r.sigma},
             {"achieved_epsilon", r.achieved_epsilon},
             {"trivially_private", r.trivially_private},
             {"evaluations", r.evaluations}});
  return kExitOk;
}

int RunTrain(const Globals& g, const std::string& config_path) {
  json doc = ReadJsonFile(config_path);
  static const std::set<std::string> known = {
      "schema_version", "dataset", "split", "method", "train",
      "target",         "lambda",  "radius", "pretrain"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw SchemaError("unknown train field '" + key + "'");
  }
  const fs::path base = fs::path(config_path).parent_path();
  std::string split_kind;
  LoadedDataset data = LoadDatasetSpec(doc.at("dataset"), base, &split_kind);
  split_kind = doc.value("split", split_kind);
  const std::string method = doc.value("method", "fdp-sgd");
  LossSplit split = MakeSplitForDataset(split_kind, data, doc.value("lambda", 0.5),
                                        doc.value("radius", 2.0));
  TrainConfig cfg = TrainConfigFromJson(doc.value("train", json::object()));
  if (!doc["train"].contains("seed")) cfg.seed = g.seed;
  if (doc.contains("target") && method != "public-only") {
    const json& t = doc["target"];
    double delta = t.value("delta", cfg.delta);
    double p = static_cast<double>(cfg.priv_batch_expected) /
               static_cast<double>(data.data.examples.size());
    cfg.delta = delta;
    cfg.sigma = CalibrateSigma({t.at("epsilon").get<double>(), delta}, p,
                               cfg.steps,
                               1.0 / static_cast<double>(cfg.priv_batch_expected));
  }
  TrainReport report = RunMethod(method, data.data, split, cfg,
                                 doc.value("pretrain", json::object()));
  json out = TrainReportToJson(report);
  out["split"] = split.name;
  out["feature_map"] = split.feature_map.descriptor();
  fs::path dir = g.out_dir;
  WriteText(dir / "train_report.json", out.dump(2) + "\n");
  WriteWeights((dir / "weights.bin").string(),
               {report.final_weights,
                {static_cast<int64_t>(report.final_weights.size())},
                cfg.seed});
  PrintJson({{"schema_version", kCliSchemaVersion},
             {"method", report.method},
             {"epsilon", EpsilonToJson(report.privacy.params.epsilon)},
             {"delta", report.privacy.params.delta},
             {"sigma", cfg.sigma},
             {"accuracy", std::isnan(report.accuracy) ? json(nullptr)
                                                      : json(report.accuracy)},
             {"empirical_risk", report.empirical_risk},
             {"report", (dir / "train_report.json").string()}});
  return kExitOk;
}

int RunSweepCommand(const Globals& g, const std::string& spec_path,
                    bool workers_given) {
  json doc = ReadJsonFile(spec_path);
  SweepSpec spec = SweepSpec::FromJson(doc);
  if (!doc.contains("seed")) spec.seed = g.seed;
  if (workers_given || !doc.contains("workers")) spec.workers = g.workers;
  std::string default_split;
  LoadedDataset data = LoadDatasetSpec(doc.at("dataset"),
                                       fs::path(spec_path).parent_path(),
                                       &default_split);
  if (!doc.contains("split")) spec.split = default_split;
  SweepResults results = RunSweep(data, spec);
  fs::path dir = g.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  EmitReport(results, ReportFormat::kJson, (dir / "results.json").string());
  EmitReport(results, ReportFormat::kCsv, (dir / "results.csv").string());
  EmitReport(results, ReportFormat::kSvg, (dir / "results.svg").string());
  int failed = 0;
  for (const SweepRow& r : results.rows) failed += r.ok() ? 0 : 1;
  PrintJson({{"schema_version", kCliSchemaVersion},
             {"rows", results.rows.size()},
             {"failed_cells", failed},
             {"results", (dir / "results.json").string()}});
  return kExitOk;
}

int RunAudit(const Globals& g, const std::string& game, bool understate,
             int64_t trials, double epsilon, double p,
             const std::vector<double>& probs, int d) {
  fs::path dir = g.out_dir;
  json summary = {{"schema_version", kCliSchemaVersion}, {"game", game}};
  bool passed = true;
  if (game == "attr") {
    SuiteOptions o;
    o.understate = understate;
    o.rr_epsilon = epsilon;
    o.seed = g.seed;
    if (trials > 0) o.mc_trials = trials;
    json reports = json::array();
    int failures = 0;
    for (const BoundReport& r : AttributeBoundSuite(o)) {
      reports.push_back(r.ToJson());
      if (!r.passed) ++failures;
    }
    passed = failures == 0;
    summary["failures"] = failures;
    summary["instances"] = reports.size();
    WriteText(dir / "audit_attr.json",
              json({{"schema_version", kCliSchemaVersion}, {"reports", reports}})
                      .dump(2) + "\n");
  } else if (game == "distinguish") {
    const int64_t n = trials > 0 ? trials : 100000;
    GameReport rr = RrDistinguishingGame(epsilon, p, d, n, g.seed,
                                         RrVariant::kDoubleEpsilon, GpVariant::kFair);
    GameReport scalar =
        ScalarDistinguishingGame(DefaultScalarProblem(), 1, n, g.seed);
    passed = rr.passed && scalar.passed;
    summary["rr_passed"] = rr.passed;
    summary["scalar_passed"] = scalar.passed;
    summary["scalar_worst_violation"] = scalar.worst_violation;
    WriteText(dir / "audit_distinguish.json",
              json({{"schema_version", kCliSchemaVersion},
                    {"games", {rr.ToJson(), scalar.ToJson()}}})
                      .dump(2) + "\n");
  } else if (game == "noamp") {
    NonamplificationOptions o;
    o.d = d;
    o.seed = g.seed;
    o.n_samples = trials;
    NonamplificationResult r = NonamplificationDemo(epsilon, probs, o);
    passed = r.tight_constant && r.gaussian_strictly_decreasing;
    summary["tight_constant"] = r.tight_constant;
    summary["gaussian_strictly_decreasing"] = r.gaussian_strictly_decreasing;
    WriteText(dir / "noamp.json", r.ToJson().dump(2) + "\n");
    WriteText(dir / "noamp.csv", r.ToCsv());
  } else {
    throw DomainError("unknown game '" + game + "'");
  }
  summary["passed"] = passed;
  PrintJson(summary);
  return passed ? kExitOk : kExitAuditFailed;
}

int RunSynth(const Globals& g, const std::string& kind, int64_t size, int dims,
             int num_public) {
  SynthOptions o;
  o.kind = ParseSynthKind(kind);
  o.size = size;
  o.dims = dims;
  o.seed = g.seed;
  o.num_public = num_public;
  SynthResult r = SynthGenerate(o);
  fs::path dir = g.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  WriteDataset((dir / (kind + ".csv")).string(), r.dataset);
  WriteManifest((dir / (kind + ".manifest.json")).string(), r.dataset.manifest);
  json truth = {{"schema_version", kCliSchemaVersion},
                {"kind", kind},
                {"seed", g.seed},
                {"default_split", r.default_split}};
  if (!r.planted.empty()) truth["planted"] = r.planted;
  if (!r.minimizer.empty()) {
    truth["minimizer"] = r.minimizer;
    truth["lambda"] = r.lambda;
  }
  WriteText(dir / (kind + ".truth.json"), truth.dump() + "\n");
  PrintJson({{"schema_version", kCliSchemaVersion},
             {"csv", (dir / (kind + ".csv")).string()},
             {"manifest", (dir / (kind + ".manifest.json")).string()},
             {"records", size}});
  return kExitOk;
}

int RunReport(const Globals& g, const std::string& format,
              const std::string& results_path, std::string output) {
  ReportFormat f = ParseReportFormat(format);
  SweepResults results = SweepResults::FromJson(ReadJsonFile(results_path));
  if (output.empty()) {
    std::error_code ec;
    fs::create_directories(g.out_dir, ec);
    output = (fs::path(g.out_dir) / (std::string("report.") + format)).string();
  }
  EmitReport(results, f, output);
  PrintJson({{"schema_version", kCliSchemaVersion}, {"output", output}});
  return kExitOk;
}

}  // namespace
}  // namespace fdp

int main(int argc, char** argv) {
  using namespace fdp;
  CLI::App app{"Feature-level privacy accounting, training and auditing"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Master seed");
  app.add_option("--out-dir", g.out_dir, "Directory for output files");
  CLI::Option* workers_opt =
      app.add_option("--workers", g.workers, "Worker threads")
          ->check(CLI::PositiveNumber);

  auto* account = app.add_subcommand("account", "Epsilon of a mechanism at delta");
  std::string mechanism = "subsampled-gaussian";
  double sigma = 1.0, p = 1.0, delta = 1e-5, sensitivity = 1.0;
  long steps = 1;
  std::string curve_out;
  account->add_option("--mechanism", mechanism)
      ->check(CLI::IsMember({"gaussian", "subsampled-gaussian"}));
  account->add_option("--sigma", sigma)->required();
  account->add_option("--p", p);
  account->add_option("--steps", steps);
  account->add_option("--delta", delta);
  account->add_option("--sensitivity", sensitivity);
  account->add_option("--curve-out", curve_out, "Write the curve JSON here");

  auto* calibrate = app.add_subcommand("calibrate", "Smallest sigma meeting a target");
  double epsilon = 1.0;
  calibrate->add_option("--epsilon", epsilon)->required();
  calibrate->add_option("--delta", delta);
  calibrate->add_option("--p", p);
  calibrate->add_option("--steps", steps);
  calibrate->add_option("--sensitivity", sensitivity);

  auto* train = app.add_subcommand("train", "Train one model from a JSON config");
  std::string config_path;
  train->add_option("--config", config_path)->required();

  auto* sweep = app.add_subcommand("sweep", "Privacy-utility sweep");
  std::string spec_path;
  sweep->add_option("--spec", spec_path)->required();

  auto* audit = app.add_subcommand("audit", "Empirical privacy audits");
  std::string game;
  bool understate = false;
  int64_t trials = 0;
  double audit_eps = std::log(2.0);
  double audit_p = 1.0;
  std::vector<double> probs = {0.1, 0.5, 1.0};
  int d = 2;
  audit->add_option("--game", game)
      ->required()
      ->check(CLI::IsMember({"attr", "distinguish", "noamp"}));
  audit->add_flag("--understate", understate,
                  "Attribute game with curves at half their epsilon");
  audit->add_option("--trials", trials, "Monte Carlo trials");
  audit->add_option("--epsilon", audit_eps, "Randomized-response epsilon");
  audit->add_option("--p", audit_p, "Subsampling probability (distinguish)");
  audit->add_option("--probs", probs, "Subsampling probabilities (noamp)")
      ->delimiter(',');
  audit->add_option("--d", d, "Bits per record");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  std::string kind;
  int64_t size = 10000;
  int dims = 20;
  int num_public = -1;
  synth->add_option("--kind", kind)
      ->required()
      ->check(CLI::IsMember({"purchase-like", "criteo-like", "label-dp-gaussian",
                             "strongly-convex-quadratic"}));
  synth->add_option("--size", size);
  synth->add_option("--dims", dims);
  synth->add_option("--num-public", num_public);

  auto* report = app.add_subcommand("report", "Render sweep results");
  std::string format = "csv", results_path, output;
  report->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "svg"}));
  report->add_option("--results", results_path)->required();
  report->add_option("--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  omp_set_num_threads(g.workers);

  try {
    if (*account) {
      return RunAccount(g, mechanism, sigma, p, steps, delta, sensitivity,
                        curve_out);
    }
    if (*calibrate) return RunCalibrate(epsilon, delta, p, steps, sensitivity);
    if (*train) return RunTrain(g, config_path);
    if (*sweep) return RunSweepCommand(g, spec_path, workers_opt->count() > 0);
    if (*audit) {
      return RunAudit(g, game, understate, trials, audit_eps, audit_p, probs, d);
    }
    if (*synth) return RunSynth(g, kind, size, dims, num_public);
    if (*report) return RunReport(g, format, results_path, output);
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NormViolationError& e) {
    std::cerr << "norm violation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid JSON input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
