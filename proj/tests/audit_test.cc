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
#include <string>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "featuredp/audit/attack.h"
#include "featuredp/audit/game.h"
#include "featuredp/audit/nonamplification.h"
#include "featuredp/audit/scalar_problem.h"
#include "featuredp/audit/suite.h"
#include "featuredp/common/errors.h"

namespace fdp {
namespace {

// Records (public, private) with public value 0; private in {0, 1, 2}.
AttackSetup SmallSetup(double radius) {
  AttackSetup s;
  s.domain = {{0, 0}, {0, 1}, {0, 2}, {1, 0}};
  s.prior = {0.2, 0.3, 0.1, 0.4};
  s.psi = [](const Record& x) { return Record{x[0]}; };
  s.feature_value = {0};
  s.metric = EuclideanDistance;
  s.radius = radius;
  return s;
}

std::string Key(const Record& r) {
  std::string k;
  for (double v : r) k += std::to_string(v) + ",";
  return k;
}

TEST(AttackTest, BallMatchesHandComputation) {
  // Conditional prior: 1/3, 1/2, 1/6 on private values 0, 1, 2.
  EXPECT_NEAR(EstimateBall(SmallSetup(0.0)).value, 0.5, 1e-15);
  EXPECT_NEAR(EstimateBall(SmallSetup(1.0)).value, 1.0, 1e-15);
  BallProfile b = EstimateBall(SmallSetup(0.0));
  EXPECT_EQ(b.argmax_center, (Record{0, 1}));
}

TEST(AttackTest, IdentityMechanismIsFullyExposed) {
  AttackSetup s = SmallSetup(0.0);
  ExactMechanism identity = [](const Record& x) {
    return std::map<std::string, double>{{Key(x), 1.0}};
  };
  EXPECT_NEAR(BayesAdvantageExact(s, identity).value, 1.0, 1e-15);
}

TEST(AttackTest, ConstantMechanismLeaksNothing) {
  AttackSetup s = SmallSetup(0.0);
  ExactMechanism constant = [](const Record&) {
    return std::map<std::string, double>{{"c", 1.0}};
  };
  EXPECT_NEAR(BayesAdvantageExact(s, constant).value, 0.5, 1e-15);
  BoundReport r = CheckAttributeBound("constant", s, constant,
                                      TradeoffCurve::Identity());
  EXPECT_TRUE(r.passed);
}

TEST(AttackTest, LeakyMechanismFailsAStrictCurve) {
  AttackSetup s = SmallSetup(0.0);
  ExactMechanism identity = [](const Record& x) {
    return std::map<std::string, double>{{Key(x), 1.0}};
  };
  BoundReport r = CheckAttributeBound("identity", s, identity,
                                      GaussianTradeoff(0.5));
  EXPECT_FALSE(r.passed);
}

TEST(AttackTest, AdversaryOutsideDomainThrows) {
  AttackSetup s = SmallSetup(0.0);
  ExactMechanism constant = [](const Record&) {
    return std::map<std::string, double>{{"c", 1.0}};
  };
  ExactAdversary bad = [](const std::string&) { return Record{5, 5}; };
  EXPECT_THROW(AdvantageExact(s, constant, bad), AttackError);
}

TEST(AttackTest, InvalidPriorRejected) {
  AttackSetup s = SmallSetup(0.0);
  s.prior = {0.5, 0.5, 0.5, 0.5};
  EXPECT_THROW(s.Validate(), DomainError);
  s = SmallSetup(0.0);
  s.feature_value = {7};
  EXPECT_THROW(s.Validate(), DomainError);
}

TEST(AttackTest, WilsonIntervalMatchesFormula) {
  double lo, hi;
  WilsonInterval(30, 100, 0.99, &lo, &hi);
  const double z = boost::math::quantile(
      boost::math::complement(boost::math::normal_distribution<double>(), 0.005));
  const double p = 0.3, n = 100;
  const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double h = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  EXPECT_NEAR(lo, c - h, 1e-12);
  EXPECT_NEAR(hi, c + h, 1e-12);
}

TEST(AttackTest, MonteCarloAdvantageCoversExactValue) {
  AttackSetup s = SmallSetup(0.0);
  std::function<Record(const Record&, uint64_t)> run =
      [](const Record& x, uint64_t) { return x; };
  std::function<Record(const Record&, std::mt19937_64&)> adv =
      [](const Record& o, std::mt19937_64&) { return o; };
  AdvantageEstimate e = AdvantageMonteCarlo<Record>(s, run, adv, 1000, 1);
  EXPECT_EQ(e.value, 1.0);
}

TEST(ScalarProblemTest, LawsMatchSampledRuns) {
  ScalarProblem prob = DefaultScalarProblem();
  for (int bit : {0, 1}) {
    GaussianMixture law = prob.MechanismLaw(bit);
    double mean = 0;
    for (size_t i = 0; i < law.weights.size(); ++i) mean += law.weights[i] * law.means[i];
    double var = law.sd * law.sd;
    for (size_t i = 0; i < law.weights.size(); ++i) {
      var += law.weights[i] * (law.means[i] - mean) * (law.means[i] - mean);
    }
    const int n = 20000;
    double s = 0;
    for (int r = 0; r < n; ++r) s += prob.RunMechanism(bit, r);
    EXPECT_NEAR(s / n, mean, 5 * std::sqrt(var / n));
  }
  GaussianMixture sim = prob.SimulatorLaw();
  double total = 0;
  for (double w : sim.weights) total += w;
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(GameTest, HugeNoiseMakesSimulatorIndistinguishable) {
  ScalarProblem prob = DefaultScalarProblem();
  prob.sigma = 1e6;
  ScoreSampler mech = [&](std::mt19937_64& g) { return prob.RunMechanism(1, g()); };
  ScoreSampler sim = [&](std::mt19937_64& g) { return prob.RunSimulator(g()); };
  GameReport r = DistinguishingGame("huge noise", mech, sim, 20000, 3,
                                    TradeoffCurve::Identity(), GameCheck::kWithinBand);
  EXPECT_TRUE(r.passed);
}

TEST(GameTest, RandomizedResponseGameMatchesExactCurve) {
  GameReport r = RrDistinguishingGame(std::log(2.0), 0.5, 2, 20000, 5,
                                      RrVariant::kDoubleEpsilon, GpVariant::kFair);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.ToJson().contains("passed"));
}

TEST(NonamplificationTest, DoubleEpsilonVariantIsConstantInP) {
  NonamplificationResult r = NonamplificationDemo(std::log(2.0), {0.1, 0.5, 1.0});
  ASSERT_EQ(r.rows.size(), 3u);
  for (const NonamplificationRow& row : r.rows) {
    EXPECT_NEAR(row.tight_epsilon, 2 * std::log(2.0), 1e-9);
    EXPECT_NEAR(row.simulator_lower_bound, std::log(2.0), 1e-9);
  }
  EXPECT_TRUE(r.tight_constant);
  EXPECT_TRUE(r.gaussian_strictly_decreasing);
  EXPECT_TRUE(r.ToJson().contains("schema_version"));
  EXPECT_NE(r.ToCsv().find('\n'), std::string::npos);
}

TEST(NonamplificationTest, RejectsLargeRecords) {
  NonamplificationOptions o;
  o.d = 9;
  EXPECT_THROW(NonamplificationDemo(1.0, {0.5}, o), DomainError);
}

TEST(SuiteTest, ExactInstancesPassAndUnderstatementFails) {
  SuiteOptions o;
  o.mc_trials = 0;
  int failures = 0;
  for (const BoundReport& r : AttributeBoundSuite(o)) {
    EXPECT_TRUE(r.passed) << r.label;
  }
  o.understate = true;
  for (const BoundReport& r : AttributeBoundSuite(o)) failures += r.passed ? 0 : 1;
  EXPECT_GE(failures, 1);
}

}  // namespace
}  // namespace fdp
