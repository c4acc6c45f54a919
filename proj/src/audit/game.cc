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
#include "featuredp/audit/game.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"

namespace fdp {
namespace {

double LogRatio(double num, double den) {
  if (num <= 0.0 && den <= 0.0) return 0.0;
  if (den <= 0.0) return std::numeric_limits<double>::infinity();
  if (num <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(num / den);
}

double Probability(const RrDistribution& d, const RrOutcome& o) {
  auto it = d.find(o);
  return it == d.end() ? 0.0 : it->second;
}

}  // namespace

nlohmann::json GameReport::ToJson() const {
  nlohmann::json doc = {
      {"label", label},
      {"passed", passed},
      {"check", check == GameCheck::kWithinBand ? "within-band" : "dominates"},
      {"worst_violation", worst_violation},
      {"samples_per_side", empirical.samples_p},
      {"band_epsilon", empirical.band_epsilon},
      {"degenerate", empirical.degenerate}};
  if (!empirical.warning.empty()) doc["warning"] = empirical.warning;
  // A coarse summary of the curves for plotting.
  nlohmann::json points = nlohmann::json::array();
  const size_t g = empirical.alphas.size();
  for (size_t k = 0; k <= 20; ++k) {
    double a = static_cast<double>(k) / 20.0;
    size_t i = std::lower_bound(empirical.alphas.begin(),
                                empirical.alphas.end(), a) -
               empirical.alphas.begin();
    i = std::min(i, g - 1);
    nlohmann::json pt = {{"alpha", empirical.alphas[i]},
                         {"empirical", empirical.empirical[i]},
                         {"lower", empirical.lower[i]},
                         {"upper", empirical.upper[i]}};
    if (reference) pt["reference"] = (*reference)(empirical.alphas[i]);
    points.push_back(pt);
  }
  doc["points"] = points;
  return doc;
}

GameReport DistinguishingGame(const std::string& label,
                              const ScoreSampler& mechanism_scores,
                              const ScoreSampler& simulator_scores,
                              int64_t n_samples, uint64_t seed,
                              const std::optional<TradeoffCurve>& reference,
                              GameCheck check, const McOptions& options) {
  GameReport r;
  r.label = label;
  r.check = check;
  r.reference = reference;
  r.empirical = McEstimateTradeoff(simulator_scores, mechanism_scores,
                                   n_samples, seed, options);
  if (!reference) return r;
  double worst = 0.0;
  for (size_t i = 0; i < r.empirical.alphas.size(); ++i) {
    double ref = (*reference)(r.empirical.alphas[i]);
    worst = std::max(worst, ref - r.empirical.upper[i]);
    if (check == GameCheck::kWithinBand) {
      worst = std::max(worst, r.empirical.lower[i] - ref);
    }
  }
  r.worst_violation = worst;
  r.passed = worst <= 1e-12;
  return r;
}

GameReport RrDistinguishingGame(double epsilon, double subsample_prob, int d,
                                int64_t n_samples, uint64_t seed,
                                RrVariant variant, GpVariant gp) {
  if (d < 1) throw DomainError("d must be at least 1");
  BitRecord target(d, 1);
  BitRecord u = PublicBits(target);
  RrDistribution mech =
      EnumerateRrSubsampled({target}, epsilon, subsample_prob, variant);
  RrDistribution sim =
      EnumerateRrSimulator({}, u, epsilon, subsample_prob, variant, gp);
  auto score = [mech, sim](RrOutcome o) {
    Canonicalize(&o);
    return LogRatio(Probability(mech, o), Probability(sim, o));
  };
  ScoreSampler mech_sampler = [=](std::mt19937_64& engine) {
    return score(
        RrSubsampled({target}, epsilon, subsample_prob, engine(), variant));
  };
  ScoreSampler sim_sampler = [=](std::mt19937_64& engine) {
    return score(RrSimulator({}, u, epsilon, subsample_prob, engine(),
                             variant, gp));
  };
  return DistinguishingGame("rr-vs-simulator", mech_sampler, sim_sampler,
                            n_samples, seed, TradeoffBetween(sim, mech),
                            GameCheck::kWithinBand);
}

GameReport ScalarDistinguishingGame(const ScalarProblem& problem, int bit,
                                    int64_t n_samples, uint64_t seed) {
  GaussianMixture mech = problem.MechanismLaw(bit);
  GaussianMixture sim = problem.SimulatorLaw();
  auto score = [mech, sim](double w) {
    return mech.LogDensity(w) - sim.LogDensity(w);
  };
  ScoreSampler mech_sampler = [=](std::mt19937_64& engine) {
    return score(problem.RunMechanism(bit, engine()));
  };
  ScoreSampler sim_sampler = [=](std::mt19937_64& engine) {
    return score(problem.RunSimulator(engine()));
  };
  return DistinguishingGame("fdp-sgd-vs-simulator", mech_sampler, sim_sampler,
                            n_samples, seed, problem.ReferenceCurve(),
                            GameCheck::kDominates);
}

}  // namespace fdp
