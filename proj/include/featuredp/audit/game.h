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
#ifndef FEATUREDP_AUDIT_GAME_H_
#define FEATUREDP_AUDIT_GAME_H_

#include <cstdint>
#include <optional>
#include <string>

#include "featuredp/audit/scalar_problem.h"
#include "featuredp/mechanisms/randomized_response.h"
#include "featuredp/tradeoff/curve.h"
#include "featuredp/tradeoff/monte_carlo.h"
#include "json.hpp"

namespace fdp {

// How the empirical curve is compared with the reference.
enum class GameCheck {
  // reference within [lower, upper] everywhere.
  kWithinBand,
  // empirical upper limit >= reference everywhere: the pair is no easier
  // to distinguish than the reference allows.
  kDominates,
};

struct GameReport {
  std::string label;
  McTradeoff empirical;
  std::optional<TradeoffCurve> reference;
  GameCheck check = GameCheck::kDominates;
  bool passed = true;
  // Largest amount by which the reference leaves the allowed region.
  double worst_violation = 0.0;

  nlohmann::json ToJson() const;
};

// Empirical T(sim, M) with scores from the two samplers (larger score =
// more like the mechanism), compared with the reference when given.
GameReport DistinguishingGame(const std::string& label,
                              const ScoreSampler& mechanism_scores,
                              const ScoreSampler& simulator_scores,
                              int64_t n_samples, uint64_t seed,
                              const std::optional<TradeoffCurve>& reference,
                              GameCheck check,
                              const McOptions& options = {});

// RR on a single record (b, u) against its simulator, scored by the exact
// log-likelihood ratio; the reference is the enumerated T(sim, M).
GameReport RrDistinguishingGame(double epsilon, double subsample_prob, int d,
                                int64_t n_samples, uint64_t seed,
                                RrVariant variant = RrVariant::kDoubleEpsilon,
                                GpVariant gp = GpVariant::kWeighted);

// One step of noisy SGD with public features against its simulator,
// scored by the exact log-likelihood ratio of the output laws; checked
// for domination of the subsampled Gaussian reference.
GameReport ScalarDistinguishingGame(const ScalarProblem& problem, int bit,
                                    int64_t n_samples, uint64_t seed);

}  // namespace fdp

#endif  // FEATUREDP_AUDIT_GAME_H_
