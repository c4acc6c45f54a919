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
#ifndef FEATUREDP_HARNESS_SWEEP_H_
#define FEATUREDP_HARNESS_SWEEP_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "featuredp/harness/dataset.h"
#include "featuredp/sgd/loss_split.h"
#include "featuredp/sgd/train.h"
#include "json.hpp"

namespace fdp {

inline constexpr int kSweepSchemaVersion = 1;

// Methods a sweep can run.
inline constexpr const char* kSweepMethods[] = {"fdp-sgd", "dpsgd",
                                                "public-only", "pretrain+fdp"};

// One hyperparameter grid: field name -> candidate values. Field names are
// TrainConfig keys plus pretrain_epochs, pretrain_lr and pretrain_batch.
using HyperGrid = std::map<std::string, std::vector<nlohmann::json>>;

struct SweepSpec {
  std::vector<double> epsilon_grid;
  // Absent: 1 / (2 N) with N the training-set size.
  std::optional<double> delta;
  std::vector<std::string> methods;
  int repeats = 1;
  // Per-method grids; a method without an entry uses DefaultGrid.
  std::map<std::string, HyperGrid> grids;
  // TrainConfig fields shared by every run before grid overrides.
  nlohmann::json base_config = nlohmann::json::object();
  std::string split = "padding";
  // Quadratic split parameters.
  double lambda = 0.5;
  double radius = 2.0;
  // Share of the records held out for utility; 0 evaluates on the
  // training set.
  double holdout_fraction = 0.2;
  uint64_t seed = 0;
  int workers = 1;

  // Throws SchemaError on an unknown method, repeats < 1, an empty
  // epsilon grid or an empty grid axis.
  void Validate() const;
  nlohmann::json ToJson() const;
  static SweepSpec FromJson(const nlohmann::json& doc);
};

// Clip thresholds {0.1, 1, 5, 10} for private methods, a single point
// otherwise.
HyperGrid DefaultGrid(const std::string& method);
// Cartesian product in lexicographic key order.
std::vector<nlohmann::json> ExpandGrid(const HyperGrid& grid);

struct SweepRow {
  double epsilon_target = 0.0;
  double delta = 0.0;
  std::string method;
  // "ok", "calibration-failed: ..." or "error: ...".
  std::string status = "ok";
  nlohmann::json hyperparameters = nlohmann::json::object();
  // Config of the selected point (seed of repeat 0).
  TrainConfig config;
  int64_t dataset_size = 0;
  double clip_effective = 0.0;
  double accuracy_mean = 0.0;
  double accuracy_std = 0.0;
  double risk_mean = 0.0;
  double risk_std = 0.0;
  double accounted_epsilon = 0.0;
  std::vector<double> accuracies;
  int repeats = 0;

  bool ok() const { return status == "ok"; }
  // Sampling probability implied by the stored config.
  double SamplingProb() const;
  nlohmann::json ToJson() const;
  static SweepRow FromJson(const nlohmann::json& doc);
};

struct SweepResults {
  int schema_version = kSweepSchemaVersion;
  std::vector<SweepRow> rows;

  nlohmann::json ToJson() const;
  static SweepResults FromJson(const nlohmann::json& doc);
  bool operator==(const SweepResults& other) const;
};

// Accounted epsilon recomputed from a row's stored config.
double RecomputeEpsilon(const SweepRow& row);

// Seed of one run, hashed from the method name, the target epsilon and
// the repeat index.
uint64_t RunSeed(uint64_t master, const std::string& method, double epsilon,
                 int repeat);

// Deterministic train/holdout partition.
void HoldoutSplit(const FeatureDataset& data, double fraction, uint64_t seed,
                  FeatureDataset* train, FeatureDataset* holdout);

// Config of one run: base config, then the grid point, then delta, sigma
// and seed.
TrainConfig BuildConfig(const SweepSpec& spec, const nlohmann::json& point,
                        double delta, double sigma, uint64_t seed);

// Runs one method on a training set with a fully specified config.
TrainReport RunMethod(const std::string& method, const FeatureDataset& train,
                      const LossSplit& split, const TrainConfig& cfg,
                      const nlohmann::json& point);

// For each (epsilon, method) cell: calibrate sigma, grid-search, re-run the
// best point with `repeats` seeds. Cells run concurrently on up to
// spec.workers threads; failures are recorded in the row's status.
SweepResults RunSweep(const LoadedDataset& dataset, const SweepSpec& spec);

}  // namespace fdp

#endif  // FEATUREDP_HARNESS_SWEEP_H_
