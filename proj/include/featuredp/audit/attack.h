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
#ifndef FEATUREDP_AUDIT_ATTACK_H_
#define FEATUREDP_AUDIT_ATTACK_H_

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <omp.h>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/tradeoff/curve.h"
#include "json.hpp"

namespace fdp {

using Record = std::vector<double>;
using RecordMetric = std::function<double(const Record&, const Record&)>;

double HammingDistance(const Record& a, const Record& b);
double EuclideanDistance(const Record& a, const Record& b);

// Attribute inference against a withheld record whose public feature u
// is known to the adversary.
struct AttackSetup {
  // Finite record domain and prior over it.
  std::vector<Record> domain;
  std::vector<double> prior;
  std::function<Record(const Record&)> psi;
  Record feature_value;
  RecordMetric metric = HammingDistance;
  double radius = 0.0;

  // Throws DomainError unless the prior is a distribution over the domain
  // and the conditional prior given psi = u is non-empty.
  void Validate() const;
  // Prior restricted to psi(x) = u and renormalized (zeros elsewhere).
  std::vector<double> ConditionalPrior() const;
  // Index of a record in the domain, or -1.
  int IndexOf(const Record& record) const;
};

struct BallProfile {
  double value = 0.0;
  Record argmax_center;
  // Bounds of a 0.99 interval; equal to value for exact profiles.
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = true;
};

// Exact supremum over centers in the domain of the conditional mass of
// the radius ball.
BallProfile EstimateBall(const AttackSetup& setup);

// Monte Carlo Ball for a sampleable conditional prior: the candidate
// center with the largest empirical ball mass, with a Wilson interval.
BallProfile EstimateBallMonteCarlo(
    const std::function<Record(std::mt19937_64&)>& sample_conditional,
    const std::vector<Record>& candidates, const RecordMetric& metric,
    double radius, int64_t samples, uint64_t seed);

struct AdvantageEstimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = true;
  int64_t trials = 0;
};

// Wilson score interval at the given confidence.
void WilsonInterval(int64_t successes, int64_t trials, double confidence,
                    double* lo, double* hi);

// Exact outcome law of the mechanism when the target is the given record,
// keyed by a canonical outcome string.
using ExactMechanism =
    std::function<std::map<std::string, double>(const Record& target)>;
using ExactAdversary = std::function<Record(const std::string& outcome)>;

// Advantage of the Bayes-optimal adversary, by posterior enumeration.
AdvantageEstimate BayesAdvantageExact(const AttackSetup& setup,
                                      const ExactMechanism& mechanism);
// Advantage of a given deterministic adversary. Throws AttackError when
// the adversary leaves the domain.
AdvantageEstimate AdvantageExact(const AttackSetup& setup,
                                 const ExactMechanism& mechanism,
                                 const ExactAdversary& adversary);

// Bayes advantage for scalar outputs with known densities:
// int max_c sum_x pi(x) f_x(w) 1[d(x, c) <= rho] dw over [lo, hi].
AdvantageEstimate BayesAdvantageContinuous(
    const AttackSetup& setup,
    const std::function<double(const Record& target, double w)>& density,
    double lo, double hi);

// Monte Carlo advantage: each trial draws a target from the conditional
// prior, runs the mechanism and scores the adversary's guess. Trial i uses
// seeds derived from (seed, i), so results do not depend on threads.
template <typename Outcome>
AdvantageEstimate AdvantageMonteCarlo(
    const AttackSetup& setup,
    const std::function<Outcome(const Record& target, uint64_t seed)>& run,
    const std::function<Record(const Outcome&, std::mt19937_64&)>& adversary,
    int64_t trials, uint64_t seed, double confidence = 0.99);

struct BoundReport {
  std::string label;
  bool passed = false;
  bool exact = true;
  double advantage = 0.0;
  double advantage_upper = 0.0;
  double ball = 0.0;
  // 1 - f(Ball).
  double bound = 0.0;
  double slack = 0.0;

  nlohmann::json ToJson() const;
};

// adv <= 1 - f(Ball): exact estimates pass when the advantage is within
// 1e-9 of the bound, Monte Carlo ones when the upper confidence limit is
// within the interval width. A pass is necessary, not sufficient, since
// only the supplied adversary is tested.
BoundReport CheckAttributeBound(const std::string& label,
                                const AdvantageEstimate& advantage,
                                const BallProfile& ball,
                                const TradeoffCurve& curve);

// Exact-mode convenience: Bayes adversary against the enumerated law.
BoundReport CheckAttributeBound(const std::string& label,
                                const AttackSetup& setup,
                                const ExactMechanism& mechanism,
                                const TradeoffCurve& curve);

// --- implementation ---

namespace audit_internal {
int SampleIndex(const std::vector<double>& weights, double u);
}  // namespace audit_internal

template <typename Outcome>
AdvantageEstimate AdvantageMonteCarlo(
    const AttackSetup& setup,
    const std::function<Outcome(const Record& target, uint64_t seed)>& run,
    const std::function<Record(const Outcome&, std::mt19937_64&)>& adversary,
    int64_t trials, uint64_t seed, double confidence) {
  setup.Validate();
  if (trials < 1) throw DomainError("need at least one trial");
  const std::vector<double> cond = setup.ConditionalPrior();
  const uint64_t stream = StreamId("audit/attack-mc");
  int64_t successes = 0;
  bool out_of_domain = false;
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : successes)
  for (int64_t i = 0; i < trials; ++i) {
    const uint64_t trial_seed =
        DeriveSeed(seed, {stream, static_cast<uint64_t>(i)});
    const int target = audit_internal::SampleIndex(
        cond, CounterUniform(trial_seed, {0}));
    const Record& x = setup.domain[target];
    Outcome o = run(x, DeriveSeed(trial_seed, {1}));
    std::mt19937_64 engine = MakeEngine(trial_seed, {2});
    Record guess = adversary(o, engine);
    if (setup.IndexOf(guess) < 0) {
#pragma omp atomic write
      out_of_domain = true;
      continue;
    }
    if (setup.metric(guess, x) <= setup.radius) ++successes;
  }
  if (out_of_domain) {
    throw AttackError("adversary returned a record outside the domain");
  }
  AdvantageEstimate est;
  est.exact = false;
  est.trials = trials;
  est.value = static_cast<double>(successes) / static_cast<double>(trials);
  WilsonInterval(successes, trials, confidence, &est.ci_low, &est.ci_high);
  return est;
}

}  // namespace fdp

#endif  // FEATUREDP_AUDIT_ATTACK_H_
