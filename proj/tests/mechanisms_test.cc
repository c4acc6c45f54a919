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
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/mechanisms/feature_map.h"
#include "featuredp/mechanisms/gaussian_sum.h"
#include "featuredp/mechanisms/randomized_response.h"
#include "featuredp/mechanisms/registry.h"
#include "featuredp/mechanisms/subsample.h"

namespace fdp {
namespace {

TEST(FeatureMapTest, SplitRecombineRoundTrip) {
  FeatureMap map = FeatureMap::PrivateColumns(5, {1, 3});
  Example x{{0.1, 0.2, 0.3, 0.4, 0.5}, 2};
  auto [pub, priv] = map.Split(x);
  EXPECT_EQ(pub.index, (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(priv.index, (std::vector<int>{1, 3}));
  EXPECT_TRUE(pub.has_label);
  Example y = map.Recombine(pub, priv);
  EXPECT_EQ(y.features, x.features);
  EXPECT_EQ(y.label, x.label);
}

TEST(FeatureMapTest, LabelDpHidesOnlyTheLabel) {
  FeatureMap map = FeatureMap::LabelDp(3);
  Example x{{1, 2, 3}, 1};
  PublicPart pub = map.Apply(x);
  EXPECT_EQ(pub.values, x.features);
  EXPECT_FALSE(pub.has_label);
  EXPECT_TRUE(map.Private(x).has_label);
}

TEST(FeatureMapTest, ZeroFillKeepsPublicPart) {
  FeatureMap map = FeatureMap::PrivateColumns(3, {0});
  Example x{{7, 8, 9}, 1};
  Example z = map.ZeroFill(map.Apply(x));
  EXPECT_EQ(z.features, (std::vector<double>{0, 8, 9}));
  EXPECT_EQ(map.Apply(z).values, map.Apply(x).values);
}

TEST(FeatureMapTest, WrongDimensionThrows) {
  FeatureMap map = FeatureMap::IdentityPublic(3);
  EXPECT_THROW(map.Apply(Example{{1, 2}, 0}), SchemaError);
}

TEST(TabularTest, MissingColumnIsNamed) {
  std::vector<ColumnSpec> cols = {{"age", ColumnKind::kNumeric, ColumnRole::kPublic},
                                  {"zip", ColumnKind::kCategorical, ColumnRole::kPrivate},
                                  {"y", ColumnKind::kLabel, ColumnRole::kPublic}};
  TabularRecord rec{{"age", "y"}, {"30", "1"}};
  try {
    SplitRecord(rec, cols);
    FAIL() << "expected a schema error";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("zip"), std::string::npos);
  }
  TabularRecord full{{"age", "zip", "y"}, {"30", "02139", "1"}};
  TabularSplit s = SplitRecord(full, cols);
  EXPECT_EQ(s.private_part.columns, (std::vector<std::string>{"zip"}));
  TabularRecord back = RecombineRecord(s, cols);
  EXPECT_EQ(back.values, full.values);
}

TEST(SubsampleTest, RateMatchesBinomial) {
  const size_t n = 200000;
  const double p = 0.3;
  auto idx = PoissonSubsampleIndices(n, p, 5);
  double sd = std::sqrt(n * p * (1 - p));
  EXPECT_NEAR(static_cast<double>(idx.size()), n * p, 5 * sd);
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
}

TEST(SubsampleTest, EdgeRates) {
  EXPECT_TRUE(PoissonSubsampleIndices(100, 0.0, 1).empty());
  EXPECT_EQ(PoissonSubsampleIndices(100, 1.0, 1).size(), 100u);
  EXPECT_THROW(PoissonSubsampleIndices(10, 1.5, 1), DomainError);
}

TEST(SubsampleTest, InclusionDoesNotDependOnPoolSize) {
  auto small = PoissonSubsampleIndices(50, 0.5, 9);
  auto large = PoissonSubsampleIndices(51, 0.5, 9);
  large.erase(std::remove(large.begin(), large.end(), size_t{50}), large.end());
  EXPECT_EQ(small, large);
}

TEST(SubsampleTest, WithoutReplacementIsUniform) {
  std::vector<int> counts(10, 0);
  const int reps = 20000;
  for (int r = 0; r < reps; ++r) {
    auto s = SampleWithoutReplacement(10, 3, r, 0);
    ASSERT_EQ(s.size(), 3u);
    ASSERT_TRUE(std::adjacent_find(s.begin(), s.end()) == s.end());
    for (size_t i : s) ++counts[i];
  }
  double expect = reps * 0.3;
  double sd = std::sqrt(reps * 0.3 * 0.7);
  for (int c : counts) EXPECT_NEAR(c, expect, 5 * sd);
}

TEST(GaussianSumTest, MomentsMatch) {
  const int reps = 20000;
  double sum = 0, sq = 0;
  for (int r = 0; r < reps; ++r) {
    auto out = GaussianSum({{1.0}, {2.0}}, 2.0, r);
    sum += out[0];
    sq += out[0] * out[0];
  }
  double mean = sum / reps;
  double var = sq / reps - mean * mean;
  EXPECT_NEAR(mean, 3.0, 5 * 2.0 / std::sqrt(reps));
  EXPECT_NEAR(var, 4.0, 0.2);
}

TEST(GaussianSumTest, DimensionErrors) {
  EXPECT_THROW(GaussianSum({{1.0}, {1.0, 2.0}}, 1.0, 0), DomainError);
  EXPECT_THROW(GaussianSum({}, 1.0, 0), DomainError);
  EXPECT_EQ(GaussianSum({}, 1.0, 0, 3).size(), 3u);
}

TEST(RandomizedResponseTest, FlipProbabilities) {
  const double eps = std::log(2.0);
  EXPECT_NEAR(RrFlipProbability(eps), 1.0 / 5.0, 1e-15);
  EXPECT_NEAR(RrFlipProbability(eps, RrVariant::kHalfExp), 0.25, 1e-15);
  EXPECT_NEAR(RrKeepProbability(eps, RrVariant::kDoubleEpsilon), 0.8, 1e-15);
}

TEST(RandomizedResponseTest, EmpiricalFlipRate) {
  const double eps = 1.0;
  std::vector<BitRecord> recs(1, BitRecord{1, 0});
  int flips = 0;
  const int reps = 50000;
  for (int r = 0; r < reps; ++r) {
    auto out = RrCounterexample(recs, eps, r);
    flips += out[0][0] == 0 ? 1 : 0;
  }
  double q = RrFlipProbability(eps);
  EXPECT_NEAR(static_cast<double>(flips) / reps, q, 5 * std::sqrt(q * (1 - q) / reps));
}

TEST(RandomizedResponseTest, SimulatorEmitProbabilities) {
  const double eps = std::log(2.0);
  // Weighted normalization: nothing emitted with probability 3/5 at p = 1.
  double e = GpEmitProbability(eps, 1.0, GpVariant::kWeighted);
  EXPECT_NEAR(1.0 - 2.0 * e, 0.6, 1e-15);
  EXPECT_NEAR(GpEmitProbability(eps, 0.4, GpVariant::kFair), 0.2, 1e-15);
}

TEST(RandomizedResponseTest, EnumerationIsNormalizedAndMatchesSampling) {
  std::vector<BitRecord> recs = {{0, 0}, {1, 1}};
  RrDistribution dist = EnumerateRrSubsampled(recs, 0.7, 0.6);
  double total = 0;
  for (const auto& [o, pr] : dist) total += pr;
  EXPECT_NEAR(total, 1.0, 1e-12);
  std::map<RrOutcome, int> counts;
  const int reps = 40000;
  for (int r = 0; r < reps; ++r) {
    RrOutcome o = RrSubsampled(recs, 0.7, 0.6, r);
    Canonicalize(&o);
    ++counts[o];
  }
  for (const auto& [o, pr] : dist) {
    double sd = std::sqrt(pr * (1 - pr) / reps);
    EXPECT_NEAR(counts[o] / static_cast<double>(reps), pr, 5 * sd + 1e-9);
  }
}

TEST(RandomizedResponseTest, TradeoffOfSingleRecordIsLinear) {
  const double eps = 0.5;
  RrDistribution a = EnumerateRrSubsampled({{0, 1}}, eps, 1.0);
  RrDistribution b = EnumerateRrSubsampled({{1, 1}}, eps, 1.0);
  // Flipping the private bit changes the likelihood by exp(2 eps).
  EXPECT_NEAR(MaxLogRatio(a, b), 2 * eps, 1e-12);
  TradeoffCurve f = TradeoffBetween(a, b);
  EXPECT_LT(f.SupDistance(LinearCurve({2 * eps, 0.0})), 1e-9);
}

TEST(RandomizedResponseTest, InvalidRecordsRejected) {
  EXPECT_THROW(ValidateBitRecord({0, 2}), DomainError);
  EXPECT_THROW(ValidateBitRecord({0, 1}, 3), DomainError);
}

TEST(RegistryTest, EveryMechanismRunsDeterministically) {
  MechanismParams params;
  params.dim = 2;
  for (const std::string& id : MechanismIds()) {
    MechanismInstance m = MakeMechanism(id, params);
    nlohmann::json data = id == "gaussian-sum" ? nlohmann::json::parse("[[0.5,1],[1,0]]")
                                               : nlohmann::json::parse("[[0,1],[1,1]]");
    EXPECT_EQ(m.run(data, 4), m.run(data, 4)) << id;
  }
  EXPECT_THROW(MakeMechanism("nope", params), DomainError);
}

TEST(RegistryTest, DumpWritesOneLinePerSeed) {
  MechanismInstance m = MakeMechanism("rr", MechanismParams{});
  std::ostringstream out;
  DumpOutcomesJsonl(m, nlohmann::json::parse("[[0,1]]"), {1, 2, 3}, out);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    auto doc = nlohmann::json::parse(line);
    EXPECT_EQ(doc["mechanism"], "rr");
    ++lines;
  }
  EXPECT_EQ(lines, 3);
}

}  // namespace
}  // namespace fdp
