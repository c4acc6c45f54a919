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
#ifndef FEATUREDP_TRADEOFF_MONTE_CARLO_H_
#define FEATUREDP_TRADEOFF_MONTE_CARLO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "featuredp/kernels/score_sampling.h"
#include "featuredp/tradeoff/curve.h"

namespace fdp {

using kernels::ScoreSampler;

struct McOptions {
  // Joint coverage of the band (both empirical CDFs).
  double confidence = 0.99;
  int grid_size = kDefaultGridSize;
  // Serial reference sampler instead of the OpenMP kernel.
  bool serial = false;
};

// Empirical trade-off curve of the test "reject P when score > t" with a
// DKW confidence band. The band holds simultaneously for all thresholds.
struct McTradeoff {
  // Lower convex hull of the empirical ROC on the grid; a valid curve.
  TradeoffCurve curve = TradeoffCurve::Identity(3);
  std::vector<double> alphas;
  // Empirical ROC (lowest point at each alpha).
  std::vector<double> empirical;
  std::vector<double> lower;
  std::vector<double> upper;
  // DKW half-width applied to each empirical CDF.
  double band_epsilon = 0.0;
  int64_t samples_p = 0;
  int64_t samples_q = 0;
  bool degenerate = false;
  std::string warning;

  // reference(alpha) in [lower, upper] at every grid point.
  bool BandContains(const TradeoffCurve& reference, double slack = 0.0) const;
  // upper >= reference at every grid point: the data are consistent with
  // the score's true ROC lying above the reference.
  bool ConsistentWithLowerBound(const TradeoffCurve& reference,
                                double slack = 0.0) const;
  // Largest violation of reference <= upper over the grid (0 if none).
  double WorstLowerBoundViolation(const TradeoffCurve& reference) const;
};

// Builds the estimate from precomputed scores.
McTradeoff McTradeoffFromScores(std::vector<double> scores_p,
                                std::vector<double> scores_q,
                                const McOptions& options = {});

// Draws n_samples scores from each sampler (larger score = more like Q).
// Throws DomainError when n_samples < 1e4.
McTradeoff McEstimateTradeoff(const ScoreSampler& sampler_p,
                              const ScoreSampler& sampler_q, int64_t n_samples,
                              uint64_t seed, const McOptions& options = {});

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_MONTE_CARLO_H_
