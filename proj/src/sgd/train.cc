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
#include "featuredp/sgd/train.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/kernels/batch_gradient.h"
#include "featuredp/mechanisms/gaussian_sum.h"
#include "featuredp/mechanisms/subsample.h"

namespace fdp {
namespace {

const uint64_t kPrivSampleStream = StreamId("sgd/private-sample");
const uint64_t kPubSampleStream = StreamId("sgd/public-sample");
const uint64_t kPrivFillStream = StreamId("sgd/private-fill");
const uint64_t kPubFillStream = StreamId("sgd/public-fill");
const uint64_t kNoiseStream = StreamId("sgd/noise");
const uint64_t kPretrainStream = StreamId("sgd/pretrain");

enum class Mode { kFdp, kPublicOnly, kBaseline };

// Everything one run needs besides the config.
struct RunSetup {
  Mode mode = Mode::kFdp;
  // Poisson pool for the private (or baseline) channel.
  const std::vector<Example>* private_pool = nullptr;
  // Uniform pool for the public channel.
  std::vector<PublicPart> public_pool;
  double sampling_prob = 0.0;
  double clip_effective = 0.0;
  std::vector<double> init;
};

void Project(std::vector<double>* w, const std::optional<double>& radius) {
  if (!radius) return;
  double n = Norm2(w->data(), static_cast<int>(w->size()));
  if (n > *radius) {
    double s = *radius / n;
    for (double& v : *w) v *= s;
  }
}

struct RunResult {
  std::vector<double> aggregate;
  ModelState state;
  std::vector<std::pair<int64_t, double>> trajectory;
  int64_t clipped = 0;
};

RunResult Run(const RunSetup& setup, const LossSplit& split,
              const TrainConfig& cfg, const FeatureDataset& eval) {
  const int dim = split.param_dim;
  const int64_t m = cfg.priv_batch_expected;
  RunResult result;
  std::vector<double> w = setup.init.empty() ? std::vector<double>(dim, 0.0)
                                             : setup.init;
  if (static_cast<int>(w.size()) != dim) {
    throw DomainError("initial weights have the wrong dimension");
  }
  Project(&w, cfg.projection_radius);
  std::vector<double> g_priv(dim), g_pub(dim), g(dim), sum(dim, 0.0);
  const int64_t suffix_len = std::max<int64_t>(
      1, static_cast<int64_t>(std::ceil(cfg.suffix_fraction * cfg.steps)));
  int64_t averaged = 0;
  const bool private_channel = setup.mode != Mode::kPublicOnly;
  const bool public_channel = setup.mode != Mode::kBaseline;
  const double noise_std = setup.clip_effective * cfg.sigma;

  for (int64_t t = 1; t <= cfg.steps; ++t) {
    const uint64_t base = DeriveSeed(cfg.seed, {static_cast<uint64_t>(t)});
    std::fill(g.begin(), g.end(), 0.0);

    if (public_channel && !setup.public_pool.empty()) {
      std::vector<size_t> batch = SampleWithoutReplacement(
          setup.public_pool.size(), static_cast<size_t>(cfg.pub_batch), base,
          kPubSampleStream);
      kernels::AccumulateStats stats = kernels::AccumulateGradients(
          static_cast<int64_t>(batch.size()), dim,
          [&](int64_t pos, double* out) {
            size_t i = batch[pos];
            split.pub_grad(w.data(), setup.public_pool[i],
                           DeriveSeed(base, {kPubFillStream, i}), out);
          },
          0.0, g_pub.data());
      if (stats.non_finite_position >= 0) {
        throw NumericalError("non-finite public gradient at step " +
                                 std::to_string(t),
                             t);
      }
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (int j = 0; j < dim; ++j) g[j] = g_pub[j] * scale;
    }

    if (private_channel) {
      const std::vector<Example>& pool = *setup.private_pool;
      std::vector<size_t> batch = PoissonSubsampleIndices(
          pool.size(), setup.sampling_prob, base, kPrivSampleStream);
      const double clip =
          cfg.clip ? setup.clip_effective : 0.0;
      kernels::AccumulateStats stats = kernels::AccumulateGradients(
          static_cast<int64_t>(batch.size()), dim,
          [&](int64_t pos, double* out) {
            size_t i = batch[pos];
            if (setup.mode == Mode::kBaseline) {
              split.full_grad(w.data(), pool[i], out);
            } else {
              split.priv_grad(w.data(), pool[i],
                              DeriveSeed(base, {kPrivFillStream, i}), out);
            }
          },
          clip, g_priv.data());
      if (stats.non_finite_position >= 0) {
        throw NumericalError("non-finite private gradient at step " +
                                 std::to_string(t),
                             t);
      }
      result.clipped += stats.clipped;
      const double inv_m = 1.0 / static_cast<double>(m);
      for (int j = 0; j < dim; ++j) g_priv[j] *= inv_m;
      AddGaussianNoise(g_priv.data(), dim, noise_std, base, kNoiseStream);
      const double mix = setup.mode == Mode::kBaseline ? 1.0 : cfg.mix_ratio;
      for (int j = 0; j < dim; ++j) g[j] += mix * g_priv[j];
    }

    const double eta = cfg.LearningRate(t);
    for (int j = 0; j < dim; ++j) {
      if (!std::isfinite(g[j])) {
        throw NumericalError("non-finite update at step " + std::to_string(t),
                             t);
      }
      w[j] -= eta * g[j];
    }
    Project(&w, cfg.projection_radius);

    if (cfg.aggregate == Aggregate::kUniformAverage ||
        (cfg.aggregate == Aggregate::kSuffixAverage &&
         t > cfg.steps - suffix_len)) {
      for (int j = 0; j < dim; ++j) sum[j] += w[j];
      ++averaged;
    }
    if (cfg.keep_history) result.state.iterate_history.push_back(w);
    if (cfg.evaluate && cfg.loss_every > 0 && t % cfg.loss_every == 0) {
      result.trajectory.emplace_back(t, EmpiricalRisk(eval, split, w));
    }
  }

  if (cfg.aggregate == Aggregate::kLast || averaged == 0) {
    result.aggregate = w;
  } else {
    result.aggregate.resize(dim);
    for (int j = 0; j < dim; ++j) result.aggregate[j] = sum[j] / averaged;
  }
  result.state.weights = w;
  result.state.step_index = cfg.steps;
  result.state.private_data_touched = private_channel;
  return result;
}

std::vector<PublicPart> PublicParts(const std::vector<Example>& examples,
                                    const FeatureMap& map) {
  std::vector<PublicPart> out;
  out.reserve(examples.size());
  for (const Example& x : examples) out.push_back(map.Apply(x));
  return out;
}

TrainReport Finish(std::string method, RunResult run, const RunSetup& setup,
                   const FeatureDataset& eval, const LossSplit& split,
                   const TrainConfig& cfg) {
  TrainReport report;
  report.method = std::move(method);
  report.final_weights = std::move(run.aggregate);
  report.state = std::move(run.state);
  report.loss_trajectory = std::move(run.trajectory);
  report.config = cfg;
  report.clip_effective = setup.clip_effective;
  report.sampling_prob = setup.sampling_prob;
  report.clipped = run.clipped;
  report.accuracy = std::numeric_limits<double>::quiet_NaN();
  report.empirical_risk = std::numeric_limits<double>::quiet_NaN();
  if (cfg.account) {
    if (setup.mode == Mode::kPublicOnly) {
      report.privacy = AccountTraining(0.0, cfg.priv_batch_expected, cfg.sigma,
                                       0.0, cfg.steps, cfg.delta);
    } else {
      report.privacy = AccountTraining(
          setup.sampling_prob, cfg.priv_batch_expected, cfg.sigma,
          setup.clip_effective, cfg.steps, cfg.delta);
    }
  }
  if (cfg.evaluate && !eval.examples.empty()) {
    report.empirical_risk = EmpiricalRisk(eval, split, report.final_weights);
    if (split.predict) {
      report.accuracy = Accuracy(eval, split, report.final_weights);
    }
    if (cfg.loss_every == 0) {
      report.loss_trajectory.emplace_back(cfg.steps, report.empirical_risk);
    }
  }
  return report;
}

std::vector<double> InitialWeights(const ModelState* init) {
  if (init == nullptr) return {};
  if (init->private_data_touched) {
    throw ContractViolation(
        "initial state was trained on private data; its cost is not "
        "accounted");
  }
  return init->weights;
}

}  // namespace

void TrainConfig::Validate(size_t dataset_size) const {
  if (priv_batch_expected < 1) throw DomainError("m must be positive");
  if (pub_batch < 1) throw DomainError("m' must be positive");
  if (steps < 1) throw DomainError("steps must be at least 1");
  if (static_cast<size_t>(priv_batch_expected) > dataset_size) {
    throw DomainError("expected private batch exceeds the dataset size");
  }
  if (!(lr > 0.0) || !std::isfinite(lr)) {
    throw DomainError("learning rate must be positive");
  }
  if (lr_schedule == LrSchedule::kInverseT && !(lambda > 0.0)) {
    throw DomainError("inverse-t schedule needs lambda > 0");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("sigma must be finite and non-negative");
  }
  if (clip && !(*clip >= 0.0)) throw DomainError("clip must be non-negative");
  if (!(mix_ratio > 0.0)) throw DomainError("mix ratio must be positive");
  if (projection_radius && !(*projection_radius > 0.0)) {
    throw DomainError("projection radius must be positive");
  }
  if (!(suffix_fraction > 0.0 && suffix_fraction <= 1.0)) {
    throw DomainError("suffix fraction must lie in (0, 1]");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1)");
  }
  if (loss_every < 0) throw DomainError("loss_every must be non-negative");
}

double TrainConfig::LearningRate(int64_t t) const {
  switch (lr_schedule) {
    case LrSchedule::kConstant:
      return lr;
    case LrSchedule::kInverseSqrt:
      return lr / std::sqrt(static_cast<double>(t));
    case LrSchedule::kInverseT:
      return 1.0 / (lambda * static_cast<double>(t));
  }
  return lr;
}

double DefaultLrConstant(double radius, double full_lipschitz, int dim,
                         double noise_std) {
  return radius / (full_lipschitz *
                   std::sqrt(1.0 + dim * noise_std * noise_std /
                                       (full_lipschitz * full_lipschitz)));
}

const char* LrScheduleName(LrSchedule s) {
  switch (s) {
    case LrSchedule::kConstant:
      return "constant";
    case LrSchedule::kInverseSqrt:
      return "inverse-sqrt";
    case LrSchedule::kInverseT:
      return "inverse-t";
  }
  return "constant";
}

const char* AggregateName(Aggregate a) {
  switch (a) {
    case Aggregate::kLast:
      return "last";
    case Aggregate::kUniformAverage:
      return "uniform-average";
    case Aggregate::kSuffixAverage:
      return "suffix-average";
  }
  return "last";
}

LrSchedule ParseLrSchedule(const std::string& name) {
  if (name == "constant") return LrSchedule::kConstant;
  if (name == "inverse-sqrt") return LrSchedule::kInverseSqrt;
  if (name == "inverse-t") return LrSchedule::kInverseT;
  throw DomainError("unknown learning-rate schedule '" + name + "'");
}

Aggregate ParseAggregate(const std::string& name) {
  if (name == "last") return Aggregate::kLast;
  if (name == "uniform-average") return Aggregate::kUniformAverage;
  if (name == "suffix-average") return Aggregate::kSuffixAverage;
  throw DomainError("unknown aggregate '" + name + "'");
}

double EffectiveClip(const LossSplit& split, const TrainConfig& cfg,
                     bool baseline) {
  if (cfg.clip) return *cfg.clip;
  double declared = baseline ? split.full_lipschitz : split.priv_lipschitz;
  if (!std::isfinite(declared)) {
    throw DomainError("no clip set and the split declares no finite " +
                      std::string(baseline ? "full" : "private") +
                      " Lipschitz bound");
  }
  return declared;
}

AccountedPrivacy AccountTraining(double sampling_prob, int64_t m, double sigma,
                                 double clip_effective, int64_t steps,
                                 double delta,
                                 const AccountingOptions& options) {
  AccountedPrivacy out;
  out.params.delta = delta;
  out.spec.sensitivity = 1.0 / static_cast<double>(m);
  out.spec.sigma = sigma;
  out.spec.sampling_prob = sampling_prob;
  out.spec.steps = steps;
  if (sampling_prob == 0.0 || clip_effective == 0.0) {
    out.params.epsilon = 0.0;
    out.curve = TradeoffCurve::Identity(options.grid_size);
    return out;
  }
  if (sigma == 0.0) {
    out.params.epsilon = kInfiniteEpsilon;
    return out;
  }
  out.curve = AccountSubsampledGaussian(out.spec, options);
  out.params.epsilon = ToEpsilon(*out.curve, delta);
  return out;
}

TrainReport TrainFdpSgd(const FeatureDataset& dataset, const LossSplit& split,
                        const TrainConfig& cfg, const ModelState* init) {
  if (dataset.examples.empty()) throw DomainError("empty dataset");
  cfg.Validate(dataset.examples.size());
  RunSetup setup;
  setup.mode = Mode::kFdp;
  setup.private_pool = &dataset.examples;
  setup.public_pool = PublicParts(dataset.examples, split.feature_map);
  setup.sampling_prob = static_cast<double>(cfg.priv_batch_expected) /
                        static_cast<double>(dataset.examples.size());
  setup.clip_effective = EffectiveClip(split, cfg, false);
  setup.init = InitialWeights(init);
  if (static_cast<size_t>(cfg.pub_batch) > setup.public_pool.size()) {
    throw DomainError("public batch exceeds the dataset size");
  }
  return Finish("fdp-sgd", Run(setup, split, cfg, dataset), setup, dataset,
                split, cfg);
}

TrainReport SimulateFdpSgd(const FeatureDataset& known,
                           const PublicPart& public_value,
                           const LossSplit& split, const TrainConfig& cfg) {
  Example filler;
  try {
    filler = split.feature_map.ZeroFill(public_value);
  } catch (const SchemaError& e) {
    throw SimulatorError(std::string("cannot build a filler record: ") +
                         e.what());
  }
  const size_t n_full = known.examples.size() + 1;
  cfg.Validate(n_full);
  RunSetup setup;
  setup.mode = Mode::kFdp;
  setup.private_pool = &known.examples;
  setup.public_pool = PublicParts(known.examples, split.feature_map);
  setup.public_pool.push_back(public_value);
  setup.sampling_prob = static_cast<double>(cfg.priv_batch_expected) /
                        static_cast<double>(n_full);
  setup.clip_effective = EffectiveClip(split, cfg, false);
  if (static_cast<size_t>(cfg.pub_batch) > setup.public_pool.size()) {
    throw DomainError("public batch exceeds the dataset size");
  }
  FeatureDataset eval = known;
  eval.examples.push_back(filler);
  return Finish("fdp-sgd-simulator", Run(setup, split, cfg, eval), setup, eval,
                split, cfg);
}

TrainReport TrainPublicOnly(const FeatureDataset& dataset,
                            const LossSplit& split, const TrainConfig& cfg,
                            const ModelState* init) {
  if (dataset.examples.empty()) throw DomainError("empty dataset");
  cfg.Validate(dataset.examples.size());
  RunSetup setup;
  setup.mode = Mode::kPublicOnly;
  setup.public_pool = PublicParts(dataset.examples, split.feature_map);
  setup.init = InitialWeights(init);
  if (static_cast<size_t>(cfg.pub_batch) > setup.public_pool.size()) {
    throw DomainError("public batch exceeds the dataset size");
  }
  TrainReport report = Finish("public-only", Run(setup, split, cfg, dataset),
                              setup, dataset, split, cfg);
  report.state.private_data_touched = false;
  return report;
}

TrainReport TrainDpsgdBaseline(const FeatureDataset& dataset,
                               const LossSplit& split, const TrainConfig& cfg) {
  if (dataset.examples.empty()) throw DomainError("empty dataset");
  cfg.Validate(dataset.examples.size());
  RunSetup setup;
  setup.mode = Mode::kBaseline;
  setup.private_pool = &dataset.examples;
  setup.sampling_prob = static_cast<double>(cfg.priv_batch_expected) /
                        static_cast<double>(dataset.examples.size());
  setup.clip_effective = EffectiveClip(split, cfg, true);
  return Finish("dpsgd", Run(setup, split, cfg, dataset), setup, dataset,
                split, cfg);
}

ModelState PublicPretrain(const FeatureDataset& dataset, const LossSplit& split,
                          int epochs, double lr, int64_t batch,
                          uint64_t seed) {
  if (epochs < 0) throw DomainError("epochs must be non-negative");
  if (batch < 1) throw DomainError("batch must be positive");
  const int dim = split.param_dim;
  ModelState state;
  state.weights.assign(dim, 0.0);
  std::vector<PublicPart> pool =
      PublicParts(dataset.examples, split.feature_map);
  std::vector<double> g(dim);
  const int64_t n = static_cast<int64_t>(pool.size());
  for (int e = 0; e < epochs && n > 0; ++e) {
    std::vector<int64_t> order(n);
    std::iota(order.begin(), order.end(), int64_t{0});
    std::mt19937_64 engine =
        MakeEngine(seed, {kPretrainStream, static_cast<uint64_t>(e)});
    std::shuffle(order.begin(), order.end(), engine);
    for (int64_t start = 0; start < n; start += batch) {
      const int64_t count = std::min(batch, n - start);
      const uint64_t step_seed =
          DeriveSeed(seed, {kPretrainStream, static_cast<uint64_t>(e),
                            static_cast<uint64_t>(start)});
      kernels::AccumulateGradients(
          count, dim,
          [&](int64_t pos, double* out) {
            int64_t i = order[start + pos];
            split.pub_grad(state.weights.data(), pool[i],
                           DeriveSeed(step_seed, {static_cast<uint64_t>(i)}),
                           out);
          },
          0.0, g.data());
      for (int j = 0; j < dim; ++j) {
        state.weights[j] -= lr * g[j] / static_cast<double>(count);
      }
      ++state.step_index;
    }
  }
  state.private_data_touched = false;
  return state;
}

double EmpiricalRisk(const FeatureDataset& dataset, const LossSplit& split,
                     const std::vector<double>& w) {
  if (dataset.examples.empty()) return 0.0;
  double total = 0.0;
  for (const Example& x : dataset.examples) total += split.loss(w.data(), x);
  return total / static_cast<double>(dataset.examples.size());
}

double Accuracy(const FeatureDataset& dataset, const LossSplit& split,
                const std::vector<double>& w) {
  if (!split.predict) return std::numeric_limits<double>::quiet_NaN();
  if (dataset.examples.empty()) return 0.0;
  int64_t correct = 0;
  for (const Example& x : dataset.examples) {
    if (split.predict(w.data(), x) == x.label) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(dataset.examples.size());
}

}  // namespace fdp
