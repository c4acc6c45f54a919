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
#ifndef FEATUREDP_AUDIT_SCALAR_PROBLEM_H_
#define FEATUREDP_AUDIT_SCALAR_PROBLEM_H_

#include <cstdint>
#include <vector>

#include "featuredp/mechanisms/feature_map.h"
#include "featuredp/sgd/loss_split.h"
#include "featuredp/sgd/train.h"
#include "featuredp/tradeoff/curve.h"

namespace fdp {

// Finite mixture of equal-variance Gaussians.
struct GaussianMixture {
  std::vector<double> weights;
  std::vector<double> means;
  double sd = 1.0;

  double Density(double x) const;
  double LogDensity(double x) const;
  // A finite interval holding all but ~1e-15 of the mass.
  double Lo() const;
  double Hi() const;
};

// One-step noisy SGD with public features on scalar weights. Records are
// (u, b) with public u and private bit b; l_pub = (w - u)^2 / 2 and
// l_priv = -tau b w, so the private gradient has norm at most tau.
struct ScalarProblem {
  double tau = 1.0;
  double sigma = 1.0;
  double lr = 1.0;
  double mix_ratio = 1.0;
  int64_t priv_batch_expected = 1;
  // 0 means the full pool.
  int64_t pub_batch = 0;
  std::vector<Example> known;
  double target_u = 0.0;

  LossSplit Split() const;
  // |S| + 1 records in the mechanism's dataset.
  int64_t FullSize() const;
  double SamplingProb() const;
  TrainConfig Config(uint64_t seed) const;
  FeatureDataset WithTarget(int bit) const;
  FeatureDataset Known() const;
  PublicPart TargetPublic() const;

  // Output w_1 of the mechanism on S + {(u, bit)}, and of the simulator,
  // by running the trainer.
  double RunMechanism(int bit, uint64_t seed) const;
  double RunSimulator(uint64_t seed) const;

  // Exact laws of w_1 by enumerating both batches.
  GaussianMixture MechanismLaw(int bit) const;
  GaussianMixture SimulatorLaw() const;

  // The one-step subsampled Gaussian curve for this problem, symmetrized.
  TradeoffCurve ReferenceCurve(int grid_size = kDefaultGridSize) const;
};

// A two-record instance: one known record (0.5, 1) plus the target.
ScalarProblem DefaultScalarProblem();

}  // namespace fdp

#endif  // FEATUREDP_AUDIT_SCALAR_PROBLEM_H_
