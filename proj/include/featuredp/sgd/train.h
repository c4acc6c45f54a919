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
#ifndef FEATUREDP_SGD_TRAIN_H_
#define FEATUREDP_SGD_TRAIN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "featuredp/mechanisms/feature_map.h"
#include "featuredp/sgd/loss_split.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/curve.h"

namespace fdp {

enum class LrSchedule { kConstant, kInverseSqrt, kInverseT };
enum class Aggregate { kLast, kUniformAverage, kSuffixAverage };

struct TrainConfig {
  // m: expected private batch size; the Poisson rate is m / |S|.
  int64_t priv_batch_expected = 1;
  // m': public batch size, drawn without replacement.
  int64_t pub_batch = 1;
  int64_t steps = 1;
  LrSchedule lr_schedule = LrSchedule::kConstant;
  // Constant rate, or the constant c of c / sqrt(t).
  double lr = 0.1;
  // Strong convexity for 1 / (lambda t).
  double lambda = 1.0;
  // Noise multiplier: the private average receives N(0, (C_eff sigma)^2).
  double sigma = 0.0;
  std::optional<double> clip;
  double mix_ratio = 1.0;
  std::optional<double> projection_radius;
  Aggregate aggregate = Aggregate::kLast;
  // Share of the final iterates averaged by kSuffixAverage.
  double suffix_fraction = 0.5;
  // delta at which the report states epsilon.
  double delta = 1e-5;
  // Record the empirical risk every this many steps (0: final only).
  int64_t loss_every = 0;
  bool keep_history = false;
  // Skip accounting and utility metrics; for games that only need the
  // released weights.
  bool account = true;
  bool evaluate = true;
  uint64_t seed = 0;

  // Throws DomainError on invalid fields or m > dataset_size.
  void Validate(size_t dataset_size) const;
  // eta(t) for t >= 1.
  double LearningRate(int64_t t) const;
};

// c = M / (tau' sqrt(1 + d sigma^2 / tau'^2)), the minimizer of the
// leading term of the convex utility bound.
double DefaultLrConstant(double radius, double full_lipschitz, int dim,
                         double noise_std);

const char* LrScheduleName(LrSchedule s);
const char* AggregateName(Aggregate a);
LrSchedule ParseLrSchedule(const std::string& name);
Aggregate ParseAggregate(const std::string& name);

struct ModelState {
  std::vector<double> weights;
  int64_t step_index = 0;
  std::vector<std::vector<double>> iterate_history;
  // False for states produced only from public features; such states add
  // no privacy cost to later training.
  bool private_data_touched = false;
};

struct AccountedPrivacy {
  PrivacyParams params;
  // Absent when epsilon is infinite.
  std::optional<TradeoffCurve> curve;
  MechanismSpec spec;
};

struct TrainReport {
  std::string method;
  std::vector<double> final_weights;
  ModelState state;
  AccountedPrivacy privacy;
  std::vector<std::pair<int64_t, double>> loss_trajectory;
  // NaN when the split has no classification rule.
  double accuracy = 0.0;
  double empirical_risk = 0.0;
  TrainConfig config;
  double clip_effective = 0.0;
  double sampling_prob = 0.0;
  int64_t clipped = 0;
};

// C_eff: the clip when set, else the declared Lipschitz constant of the
// private (fdp) or full (baseline) gradient. Throws DomainError when
// neither is finite.
double EffectiveClip(const LossSplit& split, const TrainConfig& cfg,
                     bool baseline);

// The accounted privacy of T steps at rate p with noise multiplier sigma
// and batch normalizer m, recomputed from scratch.
AccountedPrivacy AccountTraining(double sampling_prob, int64_t m, double sigma,
                                 double clip_effective, int64_t steps,
                                 double delta,
                                 const AccountingOptions& options = {});

// Noisy SGD with public features. `init` must not have touched private
// data (ContractViolation otherwise).
TrainReport TrainFdpSgd(const FeatureDataset& dataset, const LossSplit& split,
                        const TrainConfig& cfg,
                        const ModelState* init = nullptr);

// The simulator: the private batch comes from the known records only and
// the public batch from the known records plus a zero-filled filler with
// the given public value. The rate stays m / (|S| + 1).
TrainReport SimulateFdpSgd(const FeatureDataset& known,
                           const PublicPart& public_value,
                           const LossSplit& split, const TrainConfig& cfg);

// TrainFdpSgd without the private channel; accounted epsilon is 0.
TrainReport TrainPublicOnly(const FeatureDataset& dataset,
                            const LossSplit& split, const TrainConfig& cfg,
                            const ModelState* init = nullptr);

// Poisson DP-SGD on full_grad with clipping C and noise C sigma.
TrainReport TrainDpsgdBaseline(const FeatureDataset& dataset,
                               const LossSplit& split, const TrainConfig& cfg);

// Plain minibatch SGD on pub_grad.
ModelState PublicPretrain(const FeatureDataset& dataset, const LossSplit& split,
                          int epochs, double lr, int64_t batch = 32,
                          uint64_t seed = 0);

double EmpiricalRisk(const FeatureDataset& dataset, const LossSplit& split,
                     const std::vector<double>& w);
double Accuracy(const FeatureDataset& dataset, const LossSplit& split,
                const std::vector<double>& w);

}  // namespace fdp

#endif  // FEATUREDP_SGD_TRAIN_H_
