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
#include "featuredp/audit/suite.h"

#include <cmath>
#include <string>

#include "featuredp/mechanisms/randomized_response.h"
#include "featuredp/tradeoff/normal.h"

namespace fdp {
namespace {

TradeoffCurve Understated(const TradeoffCurve& curve, double delta) {
  double eps = ToEpsilon(curve, delta);
  if (IsInfiniteEpsilon(eps)) return curve;
  return LinearCurve({eps / 2.0, delta});
}

BitRecord ToBits(const Record& r) {
  BitRecord b;
  for (double v : r) b.push_back(static_cast<uint8_t>(v != 0.0));
  return b;
}

std::string OutcomeKey(const RrOutcome& o) {
  std::string key;
  for (const BitRecord& r : o) key += BitString(r) + ";";
  return key;
}

AttackSetup BitSetup(double first_bit_one, double radius) {
  AttackSetup s;
  s.domain = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  // Public value u = 1; the u = 0 half of the prior is irrelevant.
  s.prior = {0.25, 0.25, 0.5 * (1.0 - first_bit_one), 0.5 * first_bit_one};
  s.psi = [](const Record& x) { return Record{x[1]}; };
  s.feature_value = {1.0};
  s.metric = HammingDistance;
  s.radius = radius;
  return s;
}

}  // namespace

TradeoffCurve RrExactCurve(double epsilon, double subsample_prob,
                           const BitRecord& public_bits) {
  RrDistribution sim = EnumerateRrSimulator({}, public_bits, epsilon,
                                            subsample_prob,
                                            RrVariant::kDoubleEpsilon,
                                            GpVariant::kFair);
  std::optional<TradeoffCurve> out;
  for (uint8_t bit : {uint8_t{0}, uint8_t{1}}) {
    RrDistribution mech = EnumerateRrSubsampled(
        {WithPrivateBit(bit, public_bits)}, epsilon, subsample_prob);
    TradeoffCurve both =
        Symmetrize(TradeoffBetween(sim, mech), TradeoffBetween(mech, sim));
    out = out ? Symmetrize(*out, both) : both;
  }
  return *out;
}

std::vector<BoundReport> AttributeBoundSuite(const SuiteOptions& options) {
  std::vector<BoundReport> reports;
  const double eps = options.rr_epsilon;

  // RR grid.
  TradeoffCurve rr_curve = RrExactCurve(eps, 1.0, BitRecord{1});
  if (options.understate) rr_curve = Understated(rr_curve, 0.0);
  ExactMechanism rr = [eps](const Record& target) {
    std::map<std::string, double> law;
    for (const auto& [o, p] : EnumerateRrSubsampled({ToBits(target)}, eps, 1.0)) {
      law[OutcomeKey(o)] += p;
    }
    return law;
  };
  for (double prior : {0.5, 0.7, 0.9, 1.0}) {
    for (double radius : {0.0, 0.5, 1.0, 2.0}) {
      char label[64];
      std::snprintf(label, sizeof(label), "rr prior=%.1f radius=%.1f", prior,
                    radius);
      reports.push_back(CheckAttributeBound(label, BitSetup(prior, radius), rr,
                                            rr_curve));
    }
  }

  // Constant mechanism: the identity curve is exact and the bound is tight.
  {
    ExactMechanism constant = [](const Record&) {
      return std::map<std::string, double>{{"0", 1.0}};
    };
    TradeoffCurve id = TradeoffCurve::Identity();
    reports.push_back(CheckAttributeBound(
        "constant", BitSetup(0.5, 0.0), constant,
        options.understate ? Understated(id, 0.0) : id));
  }

  // Scalar noisy SGD.
  {
    ScalarProblem prob = DefaultScalarProblem();
    AttackSetup setup;
    setup.domain = {{prob.target_u, 0.0}, {prob.target_u, 1.0}};
    setup.prior = {0.5, 0.5};
    setup.psi = [](const Record& x) { return Record{x[0]}; };
    setup.feature_value = {prob.target_u};
    setup.radius = 0.0;
    GaussianMixture law0 = prob.MechanismLaw(0);
    GaussianMixture law1 = prob.MechanismLaw(1);
    auto density = [law0, law1](const Record& x, double w) {
      return x[1] != 0.0 ? law1.Density(w) : law0.Density(w);
    };
    TradeoffCurve curve = prob.ReferenceCurve();
    if (options.understate) curve = Understated(curve, 1e-5);
    double lo = std::min(law0.Lo(), law1.Lo());
    double hi = std::max(law0.Hi(), law1.Hi());
    BallProfile ball = EstimateBall(setup);
    reports.push_back(CheckAttributeBound(
        "scalar fdp-sgd exact",
        BayesAdvantageContinuous(setup, density, lo, hi), ball, curve));
    if (options.mc_trials > 0) {
      std::function<double(const Record&, uint64_t)> run =
          [prob](const Record& x, uint64_t seed) {
            return prob.RunMechanism(x[1] != 0.0 ? 1 : 0, seed);
          };
      std::function<Record(const double&, std::mt19937_64&)> adversary =
          [law0, law1, prob](const double& w, std::mt19937_64&) {
            double b = law1.LogDensity(w) > law0.LogDensity(w) ? 1.0 : 0.0;
            return Record{prob.target_u, b};
          };
      reports.push_back(CheckAttributeBound(
          "scalar fdp-sgd monte-carlo",
          AdvantageMonteCarlo<double>(setup, run, adversary,
                                      options.mc_trials, options.seed),
          ball, curve));
    }
  }
  return reports;
}

}  // namespace fdp
