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
#ifndef FEATUREDP_TRADEOFF_ACCOUNTANT_H_
#define FEATUREDP_TRADEOFF_ACCOUNTANT_H_

#include "featuredp/tradeoff/curve.h"
#include "featuredp/tradeoff/pair.h"
#include "featuredp/tradeoff/pld.h"

namespace fdp {

struct AccountingOptions {
  int grid_size = kDefaultGridSize;
  PldOptions pld;
};

// Curve for `steps` compositions of the subsampled Gaussian pair, taken in
// both directions and symmetrized: conv(min(T(P^T, Q^T), T(Q^T, P^T))).
TradeoffCurve AccountSubsampledGaussian(const MechanismSpec& spec,
                                        const AccountingOptions& options = {});

// ToEpsilon(AccountSubsampledGaussian(spec), delta).
double EpsilonForMechanism(const MechanismSpec& spec, double delta,
                           const AccountingOptions& options = {});

struct CalibrationOptions {
  // Stop when the bracket's relative width is below this...
  double sigma_rel_tolerance = 1e-3;
  // ...and the returned sigma's epsilon is within this of the target.
  double epsilon_tolerance = 2e-4;
  int max_evaluations = 80;
  AccountingOptions accounting;
};

struct CalibrationResult {
  double sigma = 0.0;
  // Accounted epsilon at sigma; never above the target.
  double achieved_epsilon = 0.0;
  // True when the mechanism leaks nothing (p = 0); sigma is then the
  // bracket minimum and carries no information.
  bool trivially_private = false;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int evaluations = 0;
};

// Smallest sigma (up to the tolerances) whose composed curve satisfies
// the target. Throws DomainError on invalid arguments and CalibrationError
// when the bracket search fails.
CalibrationResult CalibrateSigmaDetailed(const PrivacyParams& target,
                                         double sampling_prob, long steps,
                                         double sensitivity,
                                         const CalibrationOptions& options = {});

double CalibrateSigma(const PrivacyParams& target, double sampling_prob,
                      long steps, double sensitivity,
                      const CalibrationOptions& options = {});

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_ACCOUNTANT_H_
