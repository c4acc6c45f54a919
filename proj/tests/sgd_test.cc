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
#include <cmath>
#include <unistd.h>

#include <cstdio>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "featuredp/common/errors.h"
#include "featuredp/sgd/loss_split.h"
#include "featuredp/sgd/serialization.h"
#include "featuredp/sgd/splits.h"
#include "featuredp/sgd/train.h"
#include "featuredp/tradeoff/accountant.h"

namespace fdp {
namespace {

std::vector<double> RandomUnitBall(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(d);
  double s = 0;
  for (double& v : x) {
    v = n(rng);
    s += v * v;
  }
  double r = std::pow(std::uniform_real_distribution<double>(0, 1)(rng), 1.0 / d);
  for (double& v : x) v *= r / std::sqrt(s);
  return x;
}

FeatureDataset RandomClassification(int n, int d, int k, uint64_t seed) {
  std::mt19937_64 rng(seed);
  FeatureDataset data;
  data.num_classes = k;
  for (int i = 0; i < n; ++i) {
    data.examples.push_back({RandomUnitBall(d, rng), static_cast<int>(rng() % k)});
  }
  return data;
}

TEST(LogisticSplitTest, GradientsSumAndMatchFiniteDifferences) {
  const int d = 4, k = 3;
  LossSplit split = LogisticSplit(d, k);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int probe = 0; probe < 200; ++probe) {
    Example x{RandomUnitBall(d, rng), static_cast<int>(rng() % k)};
    std::vector<double> w(d * k);
    for (double& v : w) v = n(rng);
    EXPECT_LE(SumIdentityError(split, w, x, probe), 1e-12);
    std::vector<double> g(d * k);
    split.full_grad(w.data(), x, g.data());
    for (int j = 0; j < d * k; ++j) {
      const double h = 1e-5;
      std::vector<double> wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      double fd = (split.loss(wp.data(), x) - split.loss(wm.data(), x)) / (2 * h);
      EXPECT_NEAR(fd, g[j], 1e-7);
    }
  }
}

TEST(LogisticSplitTest, LipschitzBoundsHold) {
  const int d = 6, k = 4;
  LossSplit split = LogisticSplit(d, k);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n(0.0, 3.0);
  std::vector<double> g(d * k);
  for (int probe = 0; probe < 2000; ++probe) {
    Example x{RandomUnitBall(d, rng), static_cast<int>(rng() % k)};
    std::vector<double> w(d * k);
    for (double& v : w) v = n(rng);
    split.priv_grad(w.data(), x, 0, g.data());
    EXPECT_LE(Norm2(g.data(), d * k), split.priv_lipschitz + 1e-12);
    split.full_grad(w.data(), x, g.data());
    EXPECT_LE(Norm2(g.data(), d * k), split.full_lipschitz + 1e-12);
  }
}

TEST(LogisticSplitTest, UnnormalizedInputRejected) {
  LossSplit split = LogisticSplit(2, 2);
  std::vector<double> w(4, 0.0), g(4);
  EXPECT_THROW(split.full_grad(w.data(), Example{{1.0, 1.0}, 0}, g.data()),
               ContractViolation);
}

TEST(FilledSplitTest, PaddingAndMaskingSumToFullGradient) {
  const int d = 5, k = 3;
  BaseLoss base = SoftmaxCrossEntropy(d, k);
  LossSplit padding = PaddingSplit({0, 1}, d, base, 10.0);
  LossSplit masking = MaskingSplit({2, 3, 4}, d, base, 10.0);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int probe = 0; probe < 100; ++probe) {
    Example x{RandomUnitBall(d, rng), static_cast<int>(rng() % k)};
    std::vector<double> w(d * k);
    for (double& v : w) v = n(rng);
    EXPECT_LE(SumIdentityError(padding, w, x, probe), 1e-12);
    EXPECT_LE(SumIdentityError(masking, w, x, probe), 1e-12);
  }
}

TEST(FilledSplitTest, PublicGradientIgnoresPrivateColumns) {
  const int d = 4, k = 2;
  LossSplit split = MaskingSplit({3}, d, SoftmaxCrossEntropy(d, k), 1.0);
  std::vector<double> w(d * k, 0.3), a(d * k), b(d * k);
  Example x{{0.1, 0.2, 0.3, 0.4}, 1};
  Example y = x;
  y.features[3] = -0.4;
  split.pub_grad(w.data(), split.feature_map.Apply(x), 5, a.data());
  split.pub_grad(w.data(), split.feature_map.Apply(y), 5, b.data());
  EXPECT_EQ(a, b);
}

TEST(FilledSplitTest, BadColumnDeclarationsRejected) {
  BaseLoss base = SoftmaxCrossEntropy(3, 2);
  EXPECT_THROW(PaddingSplit({0, 1}, {1, 2}, 3, base, 1.0), SchemaError);
  EXPECT_THROW(PaddingSplit({0}, {1}, 3, base, 1.0), SchemaError);
  EXPECT_THROW(MaskingSplit({5}, 3, base, 1.0), SchemaError);
}

TEST(QuadraticSplitTest, DeclaredConstantsHold) {
  const int d = 6;
  LossSplit split = StronglyConvexQuadraticSplit(d, {3, 4, 5}, 0.5, 1.0, 2.0);
  std::mt19937_64 rng(4);
  std::vector<double> g(d);
  for (int probe = 0; probe < 500; ++probe) {
    Example x{RandomUnitBall(d, rng), 0};
    std::vector<double> w = RandomUnitBall(d, rng);
    for (double& v : w) v *= 2.0;
    EXPECT_LE(SumIdentityError(split, w, x, 0), 1e-12);
    split.priv_grad(w.data(), x, 0, g.data());
    EXPECT_LE(Norm2(g.data(), d), split.priv_lipschitz + 1e-12);
    split.full_grad(w.data(), x, g.data());
    EXPECT_LE(Norm2(g.data(), d), split.full_lipschitz + 1e-12);
  }
}

TEST(TrainTest, QuadraticPublicLossConvergesDespiteNoise) {
  std::vector<double> w_star = {1.0, -2.0, 0.5};
  LossSplit split = QuadraticPublicSplit(w_star);
  FeatureDataset data;
  for (int i = 0; i < 10; ++i) data.examples.push_back({{}, 0});
  TrainConfig cfg;
  cfg.steps = 1000;
  cfg.lr = 0.1;
  cfg.sigma = 5.0;
  cfg.priv_batch_expected = 5;
  cfg.pub_batch = 3;
  TrainReport r = TrainFdpSgd(data, split, cfg);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(r.final_weights[j], w_star[j], 1e-6);
  EXPECT_EQ(r.privacy.params.epsilon, 0.0);
}

// Dyadic data and rates keep every sum exact, so summation order cannot
// matter and the trajectories must agree bitwise.
FeatureDataset DyadicData() {
  FeatureDataset data;
  data.examples = {{{0.25, -0.5}, 0}, {{0.5, 0.25}, 0}, {{-0.25, 0.5}, 0},
                   {{0.5, -0.25}, 0}};
  return data;
}

std::vector<double> FullBatchGd(const FeatureDataset& data, const LossSplit& split,
                                double lr, int steps) {
  std::vector<double> w(split.param_dim, 0.0), g(split.param_dim);
  for (int t = 0; t < steps; ++t) {
    std::vector<double> sum(split.param_dim, 0.0);
    for (const Example& x : data.examples) {
      split.full_grad(w.data(), x, g.data());
      for (int j = 0; j < split.param_dim; ++j) sum[j] += g[j];
    }
    for (int j = 0; j < split.param_dim; ++j) {
      w[j] -= lr * sum[j] / static_cast<double>(data.examples.size());
    }
  }
  return w;
}

TEST(TrainTest, NoiselessFullParticipationIsGradientDescent) {
  FeatureDataset data = DyadicData();
  LossSplit split = StronglyConvexQuadraticSplit(2, {1}, 0.5, 1.0, 2.0);
  TrainConfig cfg;
  cfg.steps = 10;
  cfg.lr = 0.5;
  cfg.sigma = 0.0;
  cfg.priv_batch_expected = 4;
  cfg.pub_batch = 4;
  TrainReport r = TrainFdpSgd(data, split, cfg);
  EXPECT_EQ(r.final_weights, FullBatchGd(data, split, 0.5, 10));
  TrainReport b = TrainDpsgdBaseline(data, split, cfg);
  EXPECT_EQ(b.final_weights, FullBatchGd(data, split, 0.5, 10));
}

TEST(TrainTest, AccountedEpsilonMatchesCalibration) {
  FeatureDataset data = RandomClassification(10000, 20, 2, 5);
  LossSplit split = LogisticSplit(20, 2);
  TrainConfig cfg;
  cfg.priv_batch_expected = 100;
  cfg.pub_batch = 100;
  cfg.steps = 200;
  cfg.delta = 5e-5;
  cfg.sigma = CalibrateSigma({4.0, 5e-5}, 0.01, 200, 1.0 / 100);
  TrainReport r = TrainFdpSgd(data, split, cfg);
  EXPECT_NEAR(r.privacy.params.epsilon, 4.0, 1e-3);
  EXPECT_NEAR(r.sampling_prob, 0.01, 1e-15);
  EXPECT_EQ(r.clip_effective, 1.0);
}

TEST(TrainTest, PublicOnlyHasZeroEpsilon) {
  FeatureDataset data = RandomClassification(100, 3, 2, 6);
  TrainConfig cfg;
  cfg.pub_batch = 10;
  cfg.steps = 20;
  TrainReport r = TrainPublicOnly(data, LogisticSplit(3, 2), cfg);
  EXPECT_EQ(r.privacy.params.epsilon, 0.0);
  EXPECT_FALSE(r.state.private_data_touched);
}

TEST(TrainTest, NonFiniteGradientReportsStep) {
  LossSplit split = QuadraticPublicSplit({0.0});
  split.priv_lipschitz = 1.0;
  split.priv_grad = [](const double* w, const Example&, uint64_t, double* out) {
    out[0] = w[0] < -1.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0;
  };
  split.pub_grad = [](const double*, const PublicPart&, uint64_t, double* out) {
    out[0] = 1.0;
  };
  FeatureDataset data;
  data.examples.assign(4, Example{{}, 0});
  TrainConfig cfg;
  cfg.steps = 10;
  cfg.lr = 1.0;
  cfg.priv_batch_expected = 4;
  cfg.pub_batch = 1;
  try {
    TrainFdpSgd(data, split, cfg);
    FAIL() << "expected a numerical error";
  } catch (const NumericalError& e) {
    EXPECT_EQ(e.step(), 3);
  }
}

TEST(TrainTest, InvalidInputsRejected) {
  LossSplit split = LogisticSplit(2, 2);
  TrainConfig cfg;
  EXPECT_THROW(TrainFdpSgd(FeatureDataset{}, split, cfg), DomainError);
  FeatureDataset data = RandomClassification(10, 2, 2, 7);
  cfg.priv_batch_expected = 11;
  EXPECT_THROW(TrainFdpSgd(data, split, cfg), DomainError);
}

TEST(TrainTest, PrivateInitRejected) {
  FeatureDataset data = RandomClassification(50, 2, 2, 8);
  LossSplit split = LogisticSplit(2, 2);
  ModelState pre = PublicPretrain(data, split, 2, 0.5, 10, 1);
  EXPECT_FALSE(pre.private_data_touched);
  TrainConfig cfg;
  cfg.pub_batch = 5;
  EXPECT_NO_THROW(TrainFdpSgd(data, split, cfg, &pre));
  pre.private_data_touched = true;
  EXPECT_THROW(TrainFdpSgd(data, split, cfg, &pre), ContractViolation);
}

// l_pub = 0 makes FDP-SGD's update distributed like DP-SGD's.
TEST(TrainTest, ZeroPublicLossMatchesBaselineMoments) {
  LossSplit split;
  split.name = "zero-public";
  split.feature_map = FeatureMap::PrivateColumns(1, {0});
  split.param_dim = 1;
  split.priv_lipschitz = 1.0;
  split.full_lipschitz = 1.0;
  split.pub_grad = [](const double*, const PublicPart&, uint64_t, double* out) {
    out[0] = 0.0;
  };
  split.priv_grad = [](const double*, const Example& x, uint64_t, double* out) {
    out[0] = -x.features[0];
  };
  split.full_grad = [](const double*, const Example& x, double* out) {
    out[0] = -x.features[0];
  };
  split.loss = [](const double* w, const Example& x) { return -w[0] * x.features[0]; };
  FeatureDataset data;
  for (int i = 0; i < 8; ++i) data.examples.push_back({{0.125 * i}, 0});
  TrainConfig cfg;
  cfg.priv_batch_expected = 4;
  cfg.pub_batch = 1;
  cfg.sigma = 0.3;
  cfg.clip = 1.0;
  cfg.account = false;
  cfg.evaluate = false;
  const int n = 100000;
  double s1[2] = {0, 0}, s2[2] = {0, 0};
  for (int r = 0; r < n; ++r) {
    cfg.seed = r;
    double a = TrainFdpSgd(data, split, cfg).final_weights[0];
    cfg.seed = r + n;
    double b = TrainDpsgdBaseline(data, split, cfg).final_weights[0];
    s1[0] += a;
    s2[0] += a * a;
    s1[1] += b;
    s2[1] += b * b;
  }
  double m[2], v[2];
  for (int i = 0; i < 2; ++i) {
    m[i] = s1[i] / n;
    v[i] = s2[i] / n - m[i] * m[i];
  }
  double se = std::sqrt((v[0] + v[1]) / n);
  EXPECT_NEAR(m[0], m[1], 4 * se);
  // Variance of a sample variance is about 2 v^2 / n for near-normal data.
  EXPECT_NEAR(v[0], v[1], 4 * std::sqrt(2.0 * (v[0] * v[0] + v[1] * v[1]) / n));
}

TEST(SerializationTest, ConfigRoundTrip) {
  TrainConfig cfg;
  cfg.clip = 2.5;
  cfg.lr_schedule = LrSchedule::kInverseT;
  cfg.aggregate = Aggregate::kSuffixAverage;
  cfg.projection_radius = 3.0;
  cfg.seed = 99;
  TrainConfig back = TrainConfigFromJson(TrainConfigToJson(cfg));
  EXPECT_EQ(TrainConfigToJson(back), TrainConfigToJson(cfg));
  EXPECT_THROW(TrainConfigFromJson({{"bogus", 1}}), SchemaError);
}

TEST(SerializationTest, TamperedReportFailsConsistency) {
  FeatureDataset data = RandomClassification(200, 3, 2, 9);
  TrainConfig cfg;
  cfg.priv_batch_expected = 20;
  cfg.pub_batch = 20;
  cfg.steps = 20;
  cfg.sigma = 1.0 / 20;
  TrainReport r = TrainFdpSgd(data, LogisticSplit(3, 2), cfg);
  nlohmann::json doc = TrainReportToJson(r);
  EXPECT_TRUE(CheckReportConsistency(doc));
  doc["config"]["sigma"] = 2.0 / 20;
  EXPECT_FALSE(CheckReportConsistency(doc));
}

TEST(SerializationTest, WeightsRoundTrip) {
  char path[] = "/tmp/featuredp_weightsXXXXXX";
  int fd = mkstemp(path);
  ASSERT_GE(fd, 0);
  close(fd);
  WeightsFile f{{1.5, -2.25, 1e-300}, {3}, 42};
  WriteWeights(path, f);
  WeightsFile g = ReadWeights(path);
  EXPECT_EQ(g.weights, f.weights);
  EXPECT_EQ(g.dims, f.dims);
  EXPECT_EQ(g.seed, 42u);
  std::remove(path);
  EXPECT_THROW(ReadWeights("/nonexistent/dir/w.bin"), IoError);
}

}  // namespace
}  // namespace fdp
