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
#ifndef FEATUREDP_AUDIT_SUITE_H_
#define FEATUREDP_AUDIT_SUITE_H_

#include <cstdint>
#include <vector>

#include "featuredp/audit/attack.h"
#include "featuredp/audit/scalar_problem.h"
#include "featuredp/mechanisms/randomized_response.h"

namespace fdp {

struct SuiteOptions {
  // Replace every curve by the linear curve at half its epsilon; a
  // working audit must then fail somewhere.
  bool understate = false;
  double rr_epsilon = 0.6931471805599453;
  // Monte Carlo trials for the scalar problem; 0 skips that instance.
  int64_t mc_trials = 100000;
  uint64_t seed = 0;
};

// Attribute-inference bound checks over the shipped instances:
//   rr: single-record RR at d = 2 with its enumerated curve against the
//       fair simulator, on a 4 x 4 grid of first-bit priors and radii;
//   constant: a constant mechanism with f(a) = 1 - a;
//   scalar: one step of noisy SGD with public features with the
//       subsampled Gaussian curve, exactly and by Monte Carlo.
std::vector<BoundReport> AttributeBoundSuite(const SuiteOptions& options);

// The exact curve for single-record RR: the symmetrized trade-off between
// the fair simulator and the mechanism, minimized over both private bits.
TradeoffCurve RrExactCurve(double epsilon, double subsample_prob,
                           const BitRecord& public_bits);

}  // namespace fdp

#endif  // FEATUREDP_AUDIT_SUITE_H_
