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
#include "featuredp/harness/sweep.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <tuple>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/harness/synth.h"
#include "featuredp/sgd/serialization.h"
#include "featuredp/tradeoff/accountant.h"

namespace fdp {
namespace {

using nlohmann::json;

const std::set<std::string> kPretrainKeys = {"pretrain_epochs", "pretrain_lr",
                                             "pretrain_batch"};

bool IsPrivateMethod(const std::string& method) {
  return method != "public-only";
}

json Number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double NumberFrom(const json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw SchemaError("bad number '" + s + "'");
  }
  return v.get<double>();
}

void MeanStd(const std::vector<double>& v, double* mean, double* sd) {
  *mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - *mean) * (x - *mean);
  *sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

struct Evaluation {
  double accuracy;
  double risk;
};

Evaluation Evaluate(const TrainReport& r, const FeatureDataset& eval,
                    const LossSplit& split) {
  return {split.predict ? Accuracy(eval, split, r.final_weights)
                        : std::numeric_limits<double>::quiet_NaN(),
          EmpiricalRisk(eval, split, r.final_weights)};
}

}  // namespace

void SweepSpec::Validate() const {
  if (epsilon_grid.empty()) throw SchemaError("epsilon grid is empty");
  for (double e : epsilon_grid) {
    if (!(e > 0.0) || !std::isfinite(e)) {
      throw SchemaError("epsilon targets must be positive and finite");
    }
  }
  if (delta && !(*delta > 0.0 && *delta < 1.0)) {
    throw SchemaError("delta must lie in (0, 1)");
  }
  if (methods.empty()) throw SchemaError("no methods listed");
  for (const std::string& m : methods) {
    if (std::find_if(std::begin(kSweepMethods), std::end(kSweepMethods),
                     [&](const char* k) { return m == k; }) ==
        std::end(kSweepMethods)) {
      throw SchemaError("unknown method '" + m + "'");
    }
  }
  if (repeats < 1) throw SchemaError("repeats must be at least 1");
  for (const auto& [method, grid] : grids) {
    for (const auto& [key, values] : grid) {
      if (values.empty()) {
        throw SchemaError("empty grid axis '" + key + "' for " + method);
      }
    }
  }
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) {
    throw SchemaError("holdout fraction must lie in [0, 1)");
  }
  if (workers < 1) throw SchemaError("workers must be at least 1");
}

json SweepSpec::ToJson() const {
  json g = json::object();
  for (const auto& [method, grid] : grids) {
    json axes = json::object();
    for (const auto& [key, values] : grid) axes[key] = values;
    g[method] = axes;
  }
  return {{"schema_version", kSweepSchemaVersion},
          {"epsilon_grid", epsilon_grid},
          {"delta", delta ? json(*delta) : json(nullptr)},
          {"methods", methods},
          {"repeats", repeats},
          {"grids", g},
          {"base_config", base_config},
          {"split", split},
          {"lambda", lambda},
          {"radius", radius},
          {"holdout_fraction", holdout_fraction},
          {"seed", seed},
          {"workers", workers}};
}

SweepSpec SweepSpec::FromJson(const json& doc) {
  static const std::set<std::string> known = {
      "schema_version", "epsilon_grid", "delta",  "methods",
      "repeats",        "grids",        "base_config", "split",
      "lambda",         "radius",       "holdout_fraction", "seed",
      "workers",        "dataset"};
  if (!doc.is_object()) throw SchemaError("sweep spec must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!known.count(key)) throw SchemaError("unknown sweep field '" + key + "'");
  }
  SweepSpec s;
  try {
    if (doc.value("schema_version", kSweepSchemaVersion) != kSweepSchemaVersion) {
      throw SchemaError("unsupported sweep schema version");
    }
    s.epsilon_grid = doc.at("epsilon_grid").get<std::vector<double>>();
    if (doc.contains("delta") && !doc["delta"].is_null()) {
      s.delta = doc["delta"].get<double>();
    }
    s.methods = doc.at("methods").get<std::vector<std::string>>();
    s.repeats = doc.value("repeats", 1);
    if (doc.contains("grids")) {
      for (const auto& [method, axes] : doc["grids"].items()) {
        HyperGrid grid;
        for (const auto& [key, values] : axes.items()) {
          if (!values.is_array()) {
            throw SchemaError("grid axis '" + key + "' must be a list");
          }
          grid[key] = values.get<std::vector<json>>();
        }
        s.grids[method] = grid;
      }
    }
    if (doc.contains("base_config")) s.base_config = doc["base_config"];
    s.split = doc.value("split", s.split);
    s.lambda = doc.value("lambda", s.lambda);
    s.radius = doc.value("radius", s.radius);
    s.holdout_fraction = doc.value("holdout_fraction", s.holdout_fraction);
    s.seed = doc.value("seed", s.seed);
    s.workers = doc.value("workers", s.workers);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad sweep spec: ") + e.what());
  }
  // Rejects unknown config keys early.
  TrainConfigFromJson(s.base_config);
  s.Validate();
  return s;
}

HyperGrid DefaultGrid(const std::string& method) {
  if (!IsPrivateMethod(method)) return {};
  return {{"clip", {0.1, 1.0, 5.0, 10.0}}};
}

std::vector<json> ExpandGrid(const HyperGrid& grid) {
  std::vector<json> points = {json::object()};
  for (const auto& [key, values] : grid) {
    std::vector<json> next;
    for (const json& p : points) {
      for (const json& v : values) {
        json q = p;
        q[key] = v;
        next.push_back(q);
      }
    }
    points = std::move(next);
  }
  return points;
}

double SweepRow::SamplingProb() const {
  if (!IsPrivateMethod(method) || dataset_size == 0) return 0.0;
  return static_cast<double>(config.priv_batch_expected) /
         static_cast<double>(dataset_size);
}

json SweepRow::ToJson() const {
  json accs = json::array();
  for (double a : accuracies) accs.push_back(Number(a));
  return {{"epsilon_target", epsilon_target},
          {"delta", delta},
          {"method", method},
          {"status", status},
          {"hyperparameters", hyperparameters},
          {"config", TrainConfigToJson(config)},
          {"dataset_size", dataset_size},
          {"clip_effective", clip_effective},
          {"accuracy_mean", Number(accuracy_mean)},
          {"accuracy_std", Number(accuracy_std)},
          {"risk_mean", Number(risk_mean)},
          {"risk_std", Number(risk_std)},
          {"accounted_epsilon", EpsilonToJson(accounted_epsilon)},
          {"accuracies", accs},
          {"repeats", repeats}};
}

SweepRow SweepRow::FromJson(const json& doc) {
  SweepRow r;
  try {
    r.epsilon_target = doc.at("epsilon_target").get<double>();
    r.delta = doc.at("delta").get<double>();
    r.method = doc.at("method").get<std::string>();
    r.status = doc.at("status").get<std::string>();
    r.hyperparameters = doc.at("hyperparameters");
    r.config = TrainConfigFromJson(doc.at("config"));
    r.dataset_size = doc.at("dataset_size").get<int64_t>();
    r.clip_effective = doc.at("clip_effective").get<double>();
    r.accuracy_mean = NumberFrom(doc.at("accuracy_mean"));
    r.accuracy_std = NumberFrom(doc.at("accuracy_std"));
    r.risk_mean = NumberFrom(doc.at("risk_mean"));
    r.risk_std = NumberFrom(doc.at("risk_std"));
    r.accounted_epsilon = EpsilonFromJson(doc.at("accounted_epsilon"));
    for (const json& a : doc.at("accuracies")) r.accuracies.push_back(NumberFrom(a));
    r.repeats = doc.at("repeats").get<int>();
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad results row: ") + e.what());
  }
  return r;
}

json SweepResults::ToJson() const {
  json rows_doc = json::array();
  for (const SweepRow& r : rows) rows_doc.push_back(r.ToJson());
  return {{"schema_version", schema_version}, {"rows", rows_doc}};
}

SweepResults SweepResults::FromJson(const json& doc) {
  SweepResults out;
  try {
    out.schema_version = doc.at("schema_version").get<int>();
    if (out.schema_version != kSweepSchemaVersion) {
      throw SchemaError("unsupported results schema version");
    }
    for (const json& r : doc.at("rows")) out.rows.push_back(SweepRow::FromJson(r));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("bad results document: ") + e.what());
  }
  return out;
}

bool SweepResults::operator==(const SweepResults& other) const {
  return ToJson() == other.ToJson();
}

double RecomputeEpsilon(const SweepRow& row) {
  if (!IsPrivateMethod(row.method)) return 0.0;
  return AccountTraining(row.SamplingProb(), row.config.priv_batch_expected,
                         row.config.sigma, row.clip_effective,
                         row.config.steps, row.delta)
      .params.epsilon;
}

uint64_t RunSeed(uint64_t master, const std::string& method, double epsilon,
                 int repeat) {
  return DeriveSeed(master, {StreamId(method.c_str()),
                             std::bit_cast<uint64_t>(epsilon),
                             static_cast<uint64_t>(repeat)});
}

void HoldoutSplit(const FeatureDataset& data, double fraction, uint64_t seed,
                  FeatureDataset* train, FeatureDataset* holdout) {
  train->num_classes = holdout->num_classes = data.num_classes;
  train->examples.clear();
  holdout->examples.clear();
  const uint64_t stream = StreamId("sweep/holdout");
  for (size_t i = 0; i < data.examples.size(); ++i) {
    bool held = CounterUniform(seed, {stream, static_cast<uint64_t>(i)}) < fraction;
    (held ? holdout : train)->examples.push_back(data.examples[i]);
  }
}

TrainConfig BuildConfig(const SweepSpec& spec, const json& point, double delta,
                        double sigma, uint64_t seed) {
  json doc = spec.base_config;
  for (const auto& [key, value] : point.items()) {
    if (!kPretrainKeys.count(key)) doc[key] = value;
  }
  TrainConfig cfg = TrainConfigFromJson(doc);
  cfg.delta = delta;
  cfg.sigma = sigma;
  cfg.seed = seed;
  return cfg;
}

TrainReport RunMethod(const std::string& method, const FeatureDataset& train,
                      const LossSplit& split, const TrainConfig& cfg,
                      const json& point) {
  if (method == "fdp-sgd") return TrainFdpSgd(train, split, cfg);
  if (method == "dpsgd") return TrainDpsgdBaseline(train, split, cfg);
  if (method == "public-only") return TrainPublicOnly(train, split, cfg);
  if (method == "pretrain+fdp") {
    int epochs = point.value("pretrain_epochs", 1);
    double lr = point.value("pretrain_lr", cfg.lr);
    int64_t batch = point.value("pretrain_batch", cfg.pub_batch);
    ModelState init = PublicPretrain(train, split, epochs, lr, batch,
                                     DeriveSeed(cfg.seed, {StreamId("pretrain")}));
    TrainReport r = TrainFdpSgd(train, split, cfg, &init);
    r.method = "pretrain+fdp";
    return r;
  }
  throw DomainError("unknown method '" + method + "'");
}

SweepResults RunSweep(const LoadedDataset& dataset, const SweepSpec& spec) {
  spec.Validate();
  FeatureDataset train, holdout;
  if (spec.holdout_fraction > 0.0) {
    HoldoutSplit(dataset.data, spec.holdout_fraction, spec.seed, &train, &holdout);
  } else {
    train = dataset.data;
  }
  const FeatureDataset& eval = spec.holdout_fraction > 0.0 ? holdout : train;
  if (train.examples.empty() || eval.examples.empty()) {
    throw DomainError("sweep needs non-empty training and evaluation sets");
  }
  LoadedDataset train_view = dataset;
  train_view.data = train;
  const LossSplit split =
      MakeSplitForDataset(spec.split, train_view, spec.lambda, spec.radius);
  const int64_t n = static_cast<int64_t>(train.examples.size());
  const double delta = spec.delta ? *spec.delta : 1.0 / (2.0 * static_cast<double>(n));

  struct Cell {
    double epsilon;
    std::string method;
  };
  std::vector<Cell> cells;
  for (double e : spec.epsilon_grid) {
    for (const std::string& m : spec.methods) cells.push_back({e, m});
  }
  std::vector<SweepRow> rows(cells.size());

#pragma omp parallel for schedule(dynamic) num_threads(spec.workers)
  for (size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    SweepRow& row = rows[c];
    row.epsilon_target = cell.epsilon;
    row.delta = delta;
    row.method = cell.method;
    row.dataset_size = n;
    auto it = spec.grids.find(cell.method);
    const HyperGrid grid = it != spec.grids.end() ? it->second : DefaultGrid(cell.method);
    const bool priv = IsPrivateMethod(cell.method);
    const uint64_t seed0 = RunSeed(spec.seed, cell.method, cell.epsilon, 0);
    // Calibrated sigma per (m, T); identical across clip values.
    std::map<std::pair<int64_t, int64_t>, double> sigmas;
    double best_utility = -std::numeric_limits<double>::infinity();
    std::optional<json> best_point;
    TrainConfig best_cfg;
    Evaluation best_eval{0.0, 0.0};
    double best_clip = 0.0;
    std::string last_error;
    try {
      for (const json& point : ExpandGrid(grid)) {
        TrainConfig cfg = BuildConfig(spec, point, delta, 0.0, seed0);
        if (priv) {
          auto key = std::make_pair(cfg.priv_batch_expected, cfg.steps);
          auto s = sigmas.find(key);
          if (s == sigmas.end()) {
            double p = static_cast<double>(cfg.priv_batch_expected) /
                       static_cast<double>(n);
            double sigma = CalibrateSigma(
                {cell.epsilon, delta}, p, cfg.steps,
                1.0 / static_cast<double>(cfg.priv_batch_expected));
            s = sigmas.emplace(key, sigma).first;
          }
          cfg.sigma = s->second;
        }
        try {
          TrainReport r = RunMethod(cell.method, train, split, cfg, point);
          Evaluation ev = Evaluate(r, eval, split);
          double u = std::isnan(ev.accuracy) ? -ev.risk : ev.accuracy;
          if (u > best_utility || !best_point) {
            best_utility = u;
            best_point = point;
            best_cfg = cfg;
            best_eval = ev;
            best_clip = r.clip_effective;
          }
        } catch (const Error& e) {
          last_error = e.what();
        }
      }
      if (!best_point) {
        row.status = "error: " + (last_error.empty() ? std::string("no grid point ran")
                                                     : last_error);
      } else {
        row.hyperparameters = *best_point;
        row.config = best_cfg;
        // Repeat 0 shares the selection seed, so its run is reused.
        row.accuracies.push_back(best_eval.accuracy);
        std::vector<double> risks = {best_eval.risk};
        row.clip_effective = best_clip;
        for (int r = 1; r < spec.repeats; ++r) {
          TrainConfig cfg = best_cfg;
          cfg.seed = RunSeed(spec.seed, cell.method, cell.epsilon, r);
          TrainReport rep = RunMethod(cell.method, train, split, cfg, *best_point);
          Evaluation ev = Evaluate(rep, eval, split);
          row.accuracies.push_back(ev.accuracy);
          risks.push_back(ev.risk);
        }
        row.repeats = spec.repeats;
        MeanStd(row.accuracies, &row.accuracy_mean, &row.accuracy_std);
        MeanStd(risks, &row.risk_mean, &row.risk_std);
        row.accounted_epsilon = RecomputeEpsilon(row);
      }
    } catch (const CalibrationError& e) {
      row.status = std::string("calibration-failed: ") + e.what();
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }
  SweepResults out;
  out.rows = std::move(rows);
  return out;
}

}  // namespace fdp
