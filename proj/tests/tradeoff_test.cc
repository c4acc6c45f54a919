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
#include <random>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include "featuredp/common/errors.h"
#include "featuredp/kernels/convolution.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/curve.h"
#include "featuredp/tradeoff/monte_carlo.h"
#include "featuredp/tradeoff/normal.h"
#include "featuredp/tradeoff/pair.h"
#include "featuredp/tradeoff/pld.h"

namespace fdp {
namespace {

const boost::math::normal_distribution<double> kStd(0.0, 1.0);

double BoostCdf(double x) { return boost::math::cdf(kStd, x); }

// Gaussian trade-off from Boost.
double BoostGaussianF(double mu, double alpha) {
  if (alpha <= 0.0) return 1.0;
  if (alpha >= 1.0) return 0.0;
  return BoostCdf(boost::math::quantile(boost::math::complement(kStd, alpha)) - mu);
}

double BoostGaussianDelta(double mu, double eps) {
  return BoostCdf(mu / 2 - eps / mu) - std::exp(eps) * BoostCdf(-mu / 2 - eps / mu);
}

// Solves delta(eps) = delta by bisection on the Boost relation.
double AnalyticEpsilon(double mu, double delta) {
  if (BoostGaussianDelta(mu, 0.0) <= delta) return 0.0;
  auto f = [&](double e) { return BoostGaussianDelta(mu, e) - delta; };
  boost::math::tools::eps_tolerance<double> tol(50);
  auto r = boost::math::tools::bisect(f, 0.0, 100.0, tol);
  return 0.5 * (r.first + r.second);
}

TEST(CurveTest, GaussianMatchesBoostClosedForm) {
  for (double mu : {0.1, 1.0, 3.0}) {
    TradeoffCurve f = GaussianTradeoff(mu);
    for (double a : {1e-6, 0.01, 0.1, 0.37, 0.5, 0.9, 0.999}) {
      EXPECT_NEAR(f(a), BoostGaussianF(mu, a), 2e-4) << "mu=" << mu << " a=" << a;
    }
    for (size_t i = 0; i < f.alphas().size(); i += 97) {
      EXPECT_NEAR(f.betas()[i], BoostGaussianF(mu, f.alphas()[i]), 1e-12);
    }
  }
}

TEST(CurveTest, IdentityHasZeroEpsilon) {
  EXPECT_NEAR(ToEpsilon(TradeoffCurve::Identity(), 0.0), 0.0, 1e-6);
  EXPECT_NEAR(ToDelta(TradeoffCurve::Identity(), 0.0), 0.0, 1e-15);
}

TEST(CurveTest, LinearCurveRoundTripsEpsilon) {
  for (double eps : {0.1, 1.0, 2.5}) {
    for (double delta : {0.0, 1e-5, 0.01}) {
      TradeoffCurve f = LinearCurve({eps, delta});
      EXPECT_NEAR(ToEpsilon(f, delta), eps, 1e-6);
      EXPECT_NEAR(ToDelta(f, eps), delta, 1e-12);
    }
  }
}

TEST(CurveTest, InvariantsAreEnforced) {
  // Not convex.
  EXPECT_THROW(TradeoffCurve({0.0, 0.25, 0.5, 1.0}, {1.0, 0.2, 0.19, 0.0}),
               DomainError);
  // Above 1 - alpha.
  EXPECT_THROW(TradeoffCurve({0.0, 0.5, 1.0}, {1.0, 0.6, 0.0}), DomainError);
  // Not starting at 0.
  EXPECT_THROW(TradeoffCurve({0.1, 1.0}, {0.9, 0.0}), DomainError);
  EXPECT_THROW(ToEpsilon(TradeoffCurve::Identity(), 1.0), DomainError);
  EXPECT_THROW(GaussianTradeoff(-1.0), DomainError);
}

TEST(CurveTest, PessimisticRepairLiesBelowSamples) {
  std::vector<double> a = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> b = {1.0, 0.3, 0.5, 0.05, 0.0};
  TradeoffCurve f = TradeoffCurve::PessimisticRepair(a, b);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_LE(f(a[i]), b[i] + 1e-15);
}

TEST(CurveTest, SymmetrizeIsSymmetric) {
  MechanismSpec spec{1.0, 1.0, 0.3, 1};
  TradeoffCurve f = SubsampledGaussianTradeoff(spec);
  TradeoffCurve s = Symmetrize(f, f.Inverse());
  EXPECT_LT(s.SupDistance(s.Inverse()), 1e-6);
  EXPECT_TRUE(f.Dominates(s, 1e-12));
}

TEST(CurveTest, JsonRoundTrip) {
  TradeoffCurve f = GaussianTradeoff(1.3);
  TradeoffCurve g = TradeoffCurve::FromJson(f.ToJson());
  EXPECT_EQ(f.alphas(), g.alphas());
  EXPECT_EQ(f.betas(), g.betas());
  EXPECT_TRUE(f.ToJson().contains("grid_version"));
}

TEST(CurveTest, InfiniteEpsilonSerializes) {
  EXPECT_TRUE(IsInfiniteEpsilon(EpsilonFromJson(EpsilonToJson(kInfiniteEpsilon))));
  EXPECT_EQ(EpsilonFromJson(EpsilonToJson(1.5)), 1.5);
}

TEST(NormalTest, AgreesWithBoost) {
  for (double x : {-30.0, -5.0, -1.0, 0.0, 0.3, 4.0, 9.0}) {
    EXPECT_NEAR(NormalCdf(x), BoostCdf(x), 1e-15 + 1e-13 * BoostCdf(x));
  }
  for (double p : {1e-12, 0.01, 0.5, 0.9}) {
    EXPECT_NEAR(NormalQuantile(p), boost::math::quantile(kStd, p), 1e-9);
  }
  for (double mu : {0.5, 2.0}) {
    for (double e : {0.0, 1.0}) {
      EXPECT_NEAR(GaussianDelta(mu, e), BoostGaussianDelta(mu, e), 1e-14);
    }
  }
}

TEST(PairTest, GaussianHockeyStickMatchesClosedForm) {
  DominatingPair pair = DominatingPair::Gaussian(0.0, 1.5, 1.0);
  for (double eps : {0.0, 0.5, 2.0}) {
    // int (q - e^eps p)_+ with P = N(0,1), Q = N(1.5,1) equals delta(eps).
    double d = HockeyStick(pair.Swapped(), std::exp(eps));
    EXPECT_NEAR(d, BoostGaussianDelta(1.5, eps), 1e-9);
  }
}

TEST(PairTest, DiscreteRandomizedResponseCurve) {
  const double eps = 0.8;
  const double keep = std::exp(eps) / (1 + std::exp(eps));
  DominatingPair pair =
      DominatingPair::Discrete({0, 1}, {keep, 1 - keep}, {1 - keep, keep});
  TradeoffCurve f = TradeoffFromPair(pair);
  TradeoffCurve ref = LinearCurve({eps, 0.0});
  EXPECT_LT(f.SupDistance(ref), 1e-12);
}

TEST(PairTest, UnnormalizedPairRejected) {
  EXPECT_THROW(DominatingPair::Discrete({0, 1}, {0.5, 0.6}, {0.5, 0.5}).Validate(),
               DomainError);
}

TEST(PairTest, SubsampledGaussianAtFullRateIsGaussian) {
  MechanismSpec spec{1.0, 2.0, 1.0, 1};
  TradeoffCurve f = SubsampledGaussianTradeoff(spec);
  EXPECT_LT(f.SupDistance(GaussianTradeoff(0.5)), 1e-6);
}

TEST(PairTest, SubsampledGaussianZeroRateIsIdentity) {
  MechanismSpec spec{1.0, 1.0, 0.0, 1};
  TradeoffCurve f = SubsampledGaussianTradeoff(spec);
  EXPECT_LT(f.SupDistance(TradeoffCurve::Identity()), 1e-12);
}

TEST(PldTest, FftMatchesDirectConvolution) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> a(301), b(157);
  for (double& v : a) v = u(rng);
  for (double& v : b) v = u(rng);
  std::vector<double> fft = ConvolveFft(a, b);
  std::vector<double> direct = kernels::ConvolveDirectSerial(a, b);
  ASSERT_EQ(fft.size(), direct.size());
  for (size_t i = 0; i < fft.size(); ++i) EXPECT_NEAR(fft[i], direct[i], 1e-10);
}

TEST(PldTest, GaussianCompositionIsGaussian) {
  // T-fold composition of mu-GDP is sqrt(T) mu-GDP.
  std::vector<DominatingPair> pairs(16, DominatingPair::Gaussian(0.0, 0.25, 1.0));
  TradeoffCurve f = Compose(pairs);
  EXPECT_LT(f.SupDistance(GaussianTradeoff(1.0)), 5e-3);
  EXPECT_NEAR(ToEpsilon(f, 1e-5), AnalyticEpsilon(1.0, 1e-5), 1e-2);
}

TEST(PldTest, DiscretizationIsPessimistic) {
  PrivacyLossDistribution pld =
      PrivacyLossDistribution::FromPair(DominatingPair::Gaussian(0.0, 1.0, 1.0));
  for (double eps : {0.0, 0.5, 1.0, 2.0}) {
    EXPECT_GE(pld.HockeyStick(eps), BoostGaussianDelta(1.0, eps) - 1e-12);
    EXPECT_LE(pld.HockeyStick(eps), BoostGaussianDelta(1.0, eps) + 1e-4);
  }
}

TEST(PldTest, IdentityComposesToIdentity) {
  PrivacyLossDistribution id = PrivacyLossDistribution::Identity();
  EXPECT_NEAR(id.SelfCompose(10).HockeyStick(0.0), 0.0, 1e-12);
}

TEST(PldTest, MismatchedBinWidthsThrow) {
  PldOptions coarse;
  coarse.bin_width = 1e-2;
  auto a = PrivacyLossDistribution::FromPair(DominatingPair::Gaussian(0, 1, 1));
  auto b = PrivacyLossDistribution::FromPair(DominatingPair::Gaussian(0, 1, 1),
                                             coarse);
  EXPECT_THROW(a.Compose(b), DomainError);
}

TEST(AccountantTest, SingleStepFullRateIsGaussian) {
  MechanismSpec spec{1.0, 1.0, 1.0, 1};
  EXPECT_NEAR(EpsilonForMechanism(spec, 1e-5), AnalyticEpsilon(1.0, 1e-5), 1e-3);
}

TEST(AccountantTest, EpsilonDecreasesWithSamplingRate) {
  double prev = kInfiniteEpsilon;
  for (double p : {1.0, 0.5, 0.1, 0.01}) {
    double e = EpsilonForMechanism({1.0, 1.0, p, 10}, 1e-5);
    EXPECT_LT(e, prev);
    prev = e;
  }
}

TEST(AccountantTest, CalibrationRoundTrip) {
  PrivacyParams target{2.0, 1e-5};
  CalibrationResult r = CalibrateSigmaDetailed(target, 0.05, 100, 1.0);
  EXPECT_LE(r.achieved_epsilon, target.epsilon + 1e-12);
  EXPECT_NEAR(EpsilonForMechanism({1.0, r.sigma, 0.05, 100}, 1e-5), 2.0, 1e-3);
}

TEST(AccountantTest, CalibrationRejectsBadTargets) {
  EXPECT_THROW(CalibrateSigma({-1.0, 1e-5}, 0.1, 10, 1.0), DomainError);
  EXPECT_THROW(CalibrateSigma({1.0, 1e-5}, 1.5, 10, 1.0), DomainError);
}

TEST(AccountantTest, ZeroRateIsTriviallyPrivate) {
  CalibrationResult r = CalibrateSigmaDetailed({1.0, 1e-5}, 0.0, 10, 1.0);
  EXPECT_TRUE(r.trivially_private);
}

TEST(MonteCarloTest, BandContainsGaussianCurve) {
  ScoreSampler p = [](std::mt19937_64& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
  };
  ScoreSampler q = [](std::mt19937_64& g) {
    return std::normal_distribution<double>(1.0, 1.0)(g);
  };
  McTradeoff mc = McEstimateTradeoff(p, q, 100000, 3);
  EXPECT_TRUE(mc.BandContains(GaussianTradeoff(1.0)));
  EXPECT_FALSE(mc.BandContains(GaussianTradeoff(1.2)));
}

TEST(MonteCarloTest, TooFewSamplesRejected) {
  ScoreSampler p = [](std::mt19937_64&) { return 0.0; };
  EXPECT_THROW(McEstimateTradeoff(p, p, 100, 0), DomainError);
}

TEST(MonteCarloTest, DegenerateScoresGiveIdentity) {
  McTradeoff mc = McTradeoffFromScores(std::vector<double>(100, 1.0),
                                       std::vector<double>(100, 1.0));
  EXPECT_TRUE(mc.degenerate);
  EXPECT_FALSE(mc.warning.empty());
}

TEST(MonteCarloTest, SerialAndParallelAgree) {
  ScoreSampler p = [](std::mt19937_64& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
  };
  McOptions serial;
  serial.serial = true;
  McTradeoff a = McEstimateTradeoff(p, p, 20000, 11);
  McTradeoff b = McEstimateTradeoff(p, p, 20000, 11, serial);
  EXPECT_EQ(a.empirical, b.empirical);
}

}  // namespace
}  // namespace fdp
