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
#include "featuredp/audit/attack.h"

#include <algorithm>
#include <cmath>

#include "featuredp/tradeoff/normal.h"

namespace fdp {

namespace audit_internal {

int SampleIndex(const std::vector<double>& weights, double u) {
  double acc = 0.0;
  int last = -1;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  return last;
}

}  // namespace audit_internal

double HammingDistance(const Record& a, const Record& b) {
  if (a.size() != b.size()) {
    throw DomainError("records of different lengths");
  }
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1.0 : 0.0;
  return d;
}

double EuclideanDistance(const Record& a, const Record& b) {
  if (a.size() != b.size()) {
    throw DomainError("records of different lengths");
  }
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

void AttackSetup::Validate() const {
  if (domain.empty() || domain.size() != prior.size()) {
    throw DomainError("prior must cover a non-empty record domain");
  }
  double total = 0.0;
  for (double w : prior) {
    if (!(w >= 0.0)) throw DomainError("prior weights must be non-negative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw DomainError("prior must sum to 1");
  }
  if (!psi) throw DomainError("attack setup needs a feature map");
  if (!(radius >= 0.0)) throw DomainError("radius must be non-negative");
  double cond = 0.0;
  for (size_t i = 0; i < domain.size(); ++i) {
    if (psi(domain[i]) == feature_value) cond += prior[i];
  }
  if (!(cond > 0.0)) {
    throw DomainError("conditional prior given the feature value is empty");
  }
}

std::vector<double> AttackSetup::ConditionalPrior() const {
  std::vector<double> cond(domain.size(), 0.0);
  double total = 0.0;
  for (size_t i = 0; i < domain.size(); ++i) {
    if (psi(domain[i]) == feature_value) {
      cond[i] = prior[i];
      total += prior[i];
    }
  }
  if (!(total > 0.0)) {
    throw DomainError("conditional prior given the feature value is empty");
  }
  for (double& w : cond) w /= total;
  return cond;
}

int AttackSetup::IndexOf(const Record& record) const {
  for (size_t i = 0; i < domain.size(); ++i) {
    if (domain[i] == record) return static_cast<int>(i);
  }
  return -1;
}

BallProfile EstimateBall(const AttackSetup& setup) {
  setup.Validate();
  std::vector<double> cond = setup.ConditionalPrior();
  BallProfile best;
  best.value = -1.0;
  for (const Record& center : setup.domain) {
    double mass = 0.0;
    for (size_t i = 0; i < setup.domain.size(); ++i) {
      if (cond[i] > 0.0 && setup.metric(setup.domain[i], center) <= setup.radius) {
        mass += cond[i];
      }
    }
    if (mass > best.value) {
      best.value = mass;
      best.argmax_center = center;
    }
  }
  best.value = std::min(best.value, 1.0);
  best.ci_low = best.ci_high = best.value;
  best.exact = true;
  return best;
}

void WilsonInterval(int64_t successes, int64_t trials, double confidence,
                    double* lo, double* hi) {
  if (trials <= 0) throw DomainError("Wilson interval needs trials");
  const double z = NormalUpperQuantile((1.0 - confidence) / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (phat + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
  *lo = std::max(0.0, center - half);
  *hi = std::min(1.0, center + half);
}

BallProfile EstimateBallMonteCarlo(
    const std::function<Record(std::mt19937_64&)>& sample_conditional,
    const std::vector<Record>& candidates, const RecordMetric& metric,
    double radius, int64_t samples, uint64_t seed) {
  if (candidates.empty()) throw DomainError("no candidate centers");
  if (samples < 1) throw DomainError("need at least one sample");
  std::mt19937_64 engine = MakeEngine(seed, {StreamId("audit/ball-mc")});
  std::vector<Record> draws;
  draws.reserve(samples);
  for (int64_t i = 0; i < samples; ++i) draws.push_back(sample_conditional(engine));
  BallProfile best;
  best.exact = false;
  int64_t best_hits = -1;
  for (const Record& c : candidates) {
    int64_t hits = 0;
    for (const Record& x : draws) hits += metric(x, c) <= radius ? 1 : 0;
    if (hits > best_hits) {
      best_hits = hits;
      best.argmax_center = c;
    }
  }
  best.value = static_cast<double>(best_hits) / static_cast<double>(samples);
  WilsonInterval(best_hits, samples, 0.99, &best.ci_low, &best.ci_high);
  return best;
}

AdvantageEstimate BayesAdvantageExact(const AttackSetup& setup,
                                      const ExactMechanism& mechanism) {
  setup.Validate();
  std::vector<double> cond = setup.ConditionalPrior();
  // joint[o][i] = pi(x_i | u) P(o | x_i).
  std::map<std::string, std::vector<double>> joint;
  for (size_t i = 0; i < setup.domain.size(); ++i) {
    if (cond[i] <= 0.0) continue;
    for (const auto& [o, p] : mechanism(setup.domain[i])) {
      auto& row = joint[o];
      if (row.empty()) row.assign(setup.domain.size(), 0.0);
      row[i] += cond[i] * p;
    }
  }
  double adv = 0.0;
  for (const auto& [o, row] : joint) {
    double best = 0.0;
    for (const Record& c : setup.domain) {
      double mass = 0.0;
      for (size_t i = 0; i < row.size(); ++i) {
        if (row[i] > 0.0 && setup.metric(setup.domain[i], c) <= setup.radius) {
          mass += row[i];
        }
      }
      best = std::max(best, mass);
    }
    adv += best;
  }
  AdvantageEstimate est;
  est.value = est.ci_low = est.ci_high = std::min(adv, 1.0);
  est.exact = true;
  return est;
}

AdvantageEstimate AdvantageExact(const AttackSetup& setup,
                                 const ExactMechanism& mechanism,
                                 const ExactAdversary& adversary) {
  setup.Validate();
  std::vector<double> cond = setup.ConditionalPrior();
  double adv = 0.0;
  for (size_t i = 0; i < setup.domain.size(); ++i) {
    if (cond[i] <= 0.0) continue;
    for (const auto& [o, p] : mechanism(setup.domain[i])) {
      Record guess = adversary(o);
      if (setup.IndexOf(guess) < 0) {
        throw AttackError("adversary returned a record outside the domain");
      }
      if (setup.metric(guess, setup.domain[i]) <= setup.radius) {
        adv += cond[i] * p;
      }
    }
  }
  AdvantageEstimate est;
  est.value = est.ci_low = est.ci_high = std::min(adv, 1.0);
  return est;
}

AdvantageEstimate BayesAdvantageContinuous(
    const AttackSetup& setup,
    const std::function<double(const Record& target, double w)>& density,
    double lo, double hi) {
  setup.Validate();
  if (!(hi > lo)) throw DomainError("empty integration range");
  std::vector<double> cond = setup.ConditionalPrior();
  auto integrand = [&](double w) {
    std::vector<double> joint(setup.domain.size(), 0.0);
    for (size_t i = 0; i < setup.domain.size(); ++i) {
      if (cond[i] > 0.0) joint[i] = cond[i] * density(setup.domain[i], w);
    }
    double best = 0.0;
    for (const Record& c : setup.domain) {
      double mass = 0.0;
      for (size_t i = 0; i < joint.size(); ++i) {
        if (joint[i] > 0.0 && setup.metric(setup.domain[i], c) <= setup.radius) {
          mass += joint[i];
        }
      }
      best = std::max(best, mass);
    }
    return best;
  };
  // The integrand has kinks where the argmax changes; split the range.
  const int pieces = 256;
  double adv = 0.0;
  for (int k = 0; k < pieces; ++k) {
    double a = lo + (hi - lo) * k / pieces;
    double b = lo + (hi - lo) * (k + 1) / pieces;
    adv += Integrate(integrand, a, b);
  }
  AdvantageEstimate est;
  est.value = est.ci_low = est.ci_high = std::min(adv, 1.0);
  return est;
}

nlohmann::json BoundReport::ToJson() const {
  return {{"label", label},
          {"passed", passed},
          {"mode", exact ? "exact" : "monte-carlo"},
          {"advantage", advantage},
          {"advantage_upper", advantage_upper},
          {"ball", ball},
          {"bound", bound},
          {"slack", slack},
          {"note", "tests the supplied adversary only; a pass is necessary, "
                   "not sufficient"}};
}

BoundReport CheckAttributeBound(const std::string& label,
                                const AdvantageEstimate& advantage,
                                const BallProfile& ball,
                                const TradeoffCurve& curve) {
  BoundReport r;
  r.label = label;
  r.exact = advantage.exact && ball.exact;
  r.advantage = advantage.value;
  r.advantage_upper = advantage.ci_high;
  // A Monte Carlo Ball is used at its upper limit, which weakens f(Ball).
  r.ball = ball.exact ? ball.value : ball.ci_high;
  r.bound = 1.0 - curve(r.ball);
  r.slack = r.exact ? 1e-9 : 1e-9 + (advantage.ci_high - advantage.ci_low);
  r.passed = r.advantage_upper <= r.bound + r.slack;
  return r;
}

BoundReport CheckAttributeBound(const std::string& label,
                                const AttackSetup& setup,
                                const ExactMechanism& mechanism,
                                const TradeoffCurve& curve) {
  return CheckAttributeBound(label, BayesAdvantageExact(setup, mechanism),
                             EstimateBall(setup), curve);
}

}  // namespace fdp
