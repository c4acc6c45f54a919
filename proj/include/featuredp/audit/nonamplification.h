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
#ifndef FEATUREDP_AUDIT_NONAMPLIFICATION_H_
#define FEATUREDP_AUDIT_NONAMPLIFICATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "featuredp/mechanisms/randomized_response.h"
#include "json.hpp"

namespace fdp {

struct NonamplificationOptions {
  int d = 2;
  RrVariant variant = RrVariant::kDoubleEpsilon;
  // delta for the subsampled Gaussian contrast row.
  double delta = 1e-5;
  // Monte Carlo draws per p confirming the event probabilities; 0 skips.
  int64_t n_samples = 0;
  uint64_t seed = 0;
};

struct NonamplificationRow {
  double p = 0.0;
  // max over targets x and outcomes of |log M'(S + x) / M'(S + x0)| where
  // x0 zero-fills the private bit of x and M' = RR after Poisson(p).
  double tight_epsilon = 0.0;
  // Probabilities of the event "b is released" on S' = {a, b} and
  // S'' = {a, c}; any simulator pays at least half the log-ratio.
  double q_b = 0.0;
  double q_c = 0.0;
  double simulator_lower_bound = 0.0;
  // Monte Carlo estimates of q_b, q_c (NaN when skipped).
  double q_b_mc = 0.0;
  double q_c_mc = 0.0;
  // epsilon(delta) of the subsampled Gaussian at this p.
  double gaussian_epsilon = 0.0;
};

struct NonamplificationResult {
  double epsilon = 0.0;
  NonamplificationOptions options;
  std::vector<NonamplificationRow> rows;
  // Noise calibrated so the Gaussian's epsilon at p = 1 equals the RR
  // tight epsilon at p = 1.
  double gaussian_sigma = 0.0;
  // Tight epsilon never drops as p decreases (over p > 0), up to 1e-9.
  bool tight_nonincreasing_in_p = true;
  bool tight_constant = true;
  bool gaussian_strictly_decreasing = true;

  nlohmann::json ToJson() const;
  // Header plus one row per p.
  std::string ToCsv() const;
};

// Tightness construction with a = 0...0, b = 1...1, c = (0, 1, ..., 1) and
// known set S = {a}. Rows are returned in the order of `probs`.
NonamplificationResult NonamplificationDemo(
    double epsilon, const std::vector<double>& probs,
    const NonamplificationOptions& options = {});

}  // namespace fdp

#endif  // FEATUREDP_AUDIT_NONAMPLIFICATION_H_
