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
#include "featuredp/audit/scalar_problem.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "featuredp/common/errors.h"
#include "featuredp/sgd/splits.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/normal.h"

namespace fdp {
namespace {

// Every size-k subset of [0, n) as index lists.
void Subsets(int n, int k, int start, std::vector<int>* current,
             std::vector<std::vector<int>>* out) {
  if (static_cast<int>(current->size()) == k) {
    out->push_back(*current);
    return;
  }
  for (int i = start; i < n; ++i) {
    current->push_back(i);
    Subsets(n, k, i + 1, current, out);
    current->pop_back();
  }
}

// Law of w_1 given the private pool, the public pool and the rate.
GaussianMixture OneStepLaw(const ScalarProblem& prob,
                           const std::vector<Example>& priv_pool,
                           const std::vector<double>& pub_pool) {
  const int n_priv = static_cast<int>(priv_pool.size());
  const int n_pub = static_cast<int>(pub_pool.size());
  if (n_priv > 20 || n_pub > 20) {
    throw DomainError("scalar problem too large for exact enumeration");
  }
  const int k = prob.pub_batch > 0 ? static_cast<int>(prob.pub_batch) : n_pub;
  std::vector<std::vector<int>> pub_sets;
  std::vector<int> current;
  Subsets(n_pub, k, 0, &current, &pub_sets);
  const double p = prob.SamplingProb();
  const double m = static_cast<double>(prob.priv_batch_expected);
  const double w0 = 0.0;
  std::map<double, double> atoms;
  for (const std::vector<int>& set : pub_sets) {
    double g_pub = 0.0;
    for (int j : set) g_pub += w0 - pub_pool[j];
    g_pub /= static_cast<double>(k);
    const double w_pub = 1.0 / static_cast<double>(pub_sets.size());
    for (uint32_t mask = 0; mask < (1u << n_priv); ++mask) {
      double weight = w_pub;
      double g_priv = 0.0;
      for (int i = 0; i < n_priv; ++i) {
        if (mask & (1u << i)) {
          weight *= p;
          g_priv += -prob.tau * priv_pool[i].features[1];
        } else {
          weight *= 1.0 - p;
        }
      }
      if (weight == 0.0) continue;
      double mean = w0 - prob.lr * (g_pub + prob.mix_ratio * g_priv / m);
      atoms[mean] += weight;
    }
  }
  GaussianMixture mix;
  mix.sd = prob.lr * prob.mix_ratio * prob.tau * prob.sigma;
  if (!(mix.sd > 0.0)) {
    throw DomainError("scalar problem needs positive noise");
  }
  for (const auto& [mean, w] : atoms) {
    mix.means.push_back(mean);
    mix.weights.push_back(w);
  }
  return mix;
}

}  // namespace

double GaussianMixture::Density(double x) const {
  return std::exp(LogDensity(x));
}

double GaussianMixture::LogDensity(double x) const {
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> terms(means.size());
  for (size_t i = 0; i < means.size(); ++i) {
    terms[i] = std::log(weights[i]) + NormalLogPdf((x - means[i]) / sd) -
               std::log(sd);
    top = std::max(top, terms[i]);
  }
  if (!std::isfinite(top)) return top;
  double s = 0.0;
  for (double t : terms) s += std::exp(t - top);
  return top + std::log(s);
}

double GaussianMixture::Lo() const {
  return *std::min_element(means.begin(), means.end()) - 9.0 * sd;
}

double GaussianMixture::Hi() const {
  return *std::max_element(means.begin(), means.end()) + 9.0 * sd;
}

LossSplit ScalarProblem::Split() const { return ScalarAuditSplit(tau); }

int64_t ScalarProblem::FullSize() const {
  return static_cast<int64_t>(known.size()) + 1;
}

double ScalarProblem::SamplingProb() const {
  return static_cast<double>(priv_batch_expected) /
         static_cast<double>(FullSize());
}

TrainConfig ScalarProblem::Config(uint64_t seed) const {
  TrainConfig cfg;
  cfg.priv_batch_expected = priv_batch_expected;
  cfg.pub_batch = pub_batch > 0 ? pub_batch : FullSize();
  cfg.steps = 1;
  cfg.lr = lr;
  cfg.sigma = sigma;
  cfg.mix_ratio = mix_ratio;
  cfg.account = false;
  cfg.evaluate = false;
  cfg.seed = seed;
  return cfg;
}

FeatureDataset ScalarProblem::WithTarget(int bit) const {
  FeatureDataset d;
  d.examples = known;
  Example x;
  x.features = {target_u, static_cast<double>(bit)};
  d.examples.push_back(x);
  return d;
}

FeatureDataset ScalarProblem::Known() const {
  FeatureDataset d;
  d.examples = known;
  return d;
}

PublicPart ScalarProblem::TargetPublic() const {
  return Split().feature_map.Apply(WithTarget(0).examples.back());
}

double ScalarProblem::RunMechanism(int bit, uint64_t seed) const {
  return TrainFdpSgd(WithTarget(bit), Split(), Config(seed)).final_weights[0];
}

double ScalarProblem::RunSimulator(uint64_t seed) const {
  return SimulateFdpSgd(Known(), TargetPublic(), Split(), Config(seed))
      .final_weights[0];
}

GaussianMixture ScalarProblem::MechanismLaw(int bit) const {
  FeatureDataset d = WithTarget(bit);
  std::vector<double> pub;
  for (const Example& x : d.examples) pub.push_back(x.features[0]);
  return OneStepLaw(*this, d.examples, pub);
}

GaussianMixture ScalarProblem::SimulatorLaw() const {
  std::vector<double> pub;
  for (const Example& x : known) pub.push_back(x.features[0]);
  pub.push_back(target_u);
  return OneStepLaw(*this, known, pub);
}

TradeoffCurve ScalarProblem::ReferenceCurve(int grid_size) const {
  MechanismSpec spec;
  spec.sensitivity = 1.0 / static_cast<double>(priv_batch_expected);
  spec.sigma = sigma;
  spec.sampling_prob = SamplingProb();
  spec.steps = 1;
  AccountingOptions opts;
  opts.grid_size = grid_size;
  return AccountSubsampledGaussian(spec, opts);
}

ScalarProblem DefaultScalarProblem() {
  ScalarProblem prob;
  prob.tau = 1.0;
  prob.sigma = 1.0;
  prob.lr = 1.0;
  prob.priv_batch_expected = 1;
  Example known;
  known.features = {0.5, 1.0};
  prob.known = {known};
  prob.target_u = -0.5;
  return prob;
}

}  // namespace fdp
