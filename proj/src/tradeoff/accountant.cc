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
#include "featuredp/tradeoff/accountant.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "featuredp/common/errors.h"

namespace fdp {
namespace {

constexpr double kMaxRatio = 1073741824.0;  // 2^30
constexpr double kMinRatio = 1.0 / 1048576.0;

std::string BracketMessage(const char* what, double lo, double hi,
                           double eps_lo, double eps_hi) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: bracket sigma/sensitivity in [%.6g, %.6g] with "
                "epsilon in [%.6g, %.6g]",
                what, lo, hi, eps_hi, eps_lo);
  return buf;
}

}  // namespace

TradeoffCurve AccountSubsampledGaussian(const MechanismSpec& spec,
                                        const AccountingOptions& options) {
  spec.Validate();
  if (spec.sampling_prob == 0.0 || spec.sensitivity == 0.0) {
    return TradeoffCurve::Identity(options.grid_size);
  }
  const DominatingPair pair = spec.Pair();
  PrivacyLossDistribution forward =
      PrivacyLossDistribution::FromPair(pair, options.pld)
          .SelfCompose(spec.steps);
  TradeoffCurve f = forward.ToCurve(options.grid_size);
  if (spec.sampling_prob == 1.0) {
    // The Gaussian pair is symmetric under relabeling.
    return f;
  }
  PrivacyLossDistribution backward =
      PrivacyLossDistribution::FromPair(pair.Swapped(), options.pld)
          .SelfCompose(spec.steps);
  return Symmetrize(f, backward.ToCurve(options.grid_size));
}

double EpsilonForMechanism(const MechanismSpec& spec, double delta,
                           const AccountingOptions& options) {
  return ToEpsilon(AccountSubsampledGaussian(spec, options), delta);
}

CalibrationResult CalibrateSigmaDetailed(const PrivacyParams& target,
                                         double sampling_prob, long steps,
                                         double sensitivity,
                                         const CalibrationOptions& options) {
  if (!(target.epsilon > 0.0)) {
    throw DomainError("calibration target epsilon must be positive");
  }
  if (!(target.delta > 0.0 && target.delta < 1.0)) {
    throw DomainError("calibration target delta must lie in (0, 1)");
  }
  if (steps < 1) throw DomainError("steps must be >= 1");
  if (!(sensitivity > 0.0)) throw DomainError("sensitivity must be positive");
  if (!(sampling_prob >= 0.0 && sampling_prob <= 1.0)) {
    throw DomainError("sampling_prob must lie in [0, 1]");
  }
  CalibrationResult result;
  if (sampling_prob == 0.0) {
    result.trivially_private = true;
    result.bracket_lo = result.bracket_hi = result.sigma =
        kMinRatio * sensitivity;
    result.achieved_epsilon = 0.0;
    return result;
  }

  // The pair depends on sensitivity / sigma only, so search the ratio
  // r = sigma / sensitivity and rescale at the end.
  auto epsilon_at = [&](double r) {
    ++result.evaluations;
    MechanismSpec spec{1.0, r, sampling_prob, steps};
    try {
      return EpsilonForMechanism(spec, target.delta, options.accounting);
    } catch (const AccuracyError&) {
      // Too little noise to discretize: far outside the target anyway.
      return kInfiniteEpsilon;
    }
  };

  double lo = 1.0, hi = 1.0;
  double eps_lo = epsilon_at(1.0), eps_hi = eps_lo;
  if (eps_hi > target.epsilon) {
    while (eps_hi > target.epsilon) {
      lo = hi;
      eps_lo = eps_hi;
      hi *= 2.0;
      if (hi > kMaxRatio) {
        throw CalibrationError(BracketMessage("target epsilon unreachable", lo,
                                              hi, eps_lo, eps_hi));
      }
      eps_hi = epsilon_at(hi);
    }
  } else {
    while (eps_lo <= target.epsilon) {
      hi = lo;
      eps_hi = eps_lo;
      lo *= 0.5;
      if (lo < kMinRatio) {
        throw CalibrationError(BracketMessage("no violating sigma found", lo,
                                              hi, eps_lo, eps_hi));
      }
      eps_lo = epsilon_at(lo);
    }
  }

  // Illinois regula falsi on log(sigma), falling back to bisection.
  double f_lo = eps_lo - target.epsilon;  // > 0
  double f_hi = eps_hi - target.epsilon;  // <= 0
  int side = 0;
  while (!(hi / lo - 1.0 <= options.sigma_rel_tolerance &&
           target.epsilon - eps_hi <= options.epsilon_tolerance)) {
    if (result.evaluations >= options.max_evaluations) {
      throw CalibrationError(BracketMessage("calibration did not converge",
                                            lo, hi, eps_lo, eps_hi));
    }
    double s_lo = std::log(lo), s_hi = std::log(hi);
    double s = 0.5 * (s_lo + s_hi);
    if (std::isfinite(f_lo) && f_lo - f_hi > 0.0) {
      double guess = (s_lo * f_hi - s_hi * f_lo) / (f_hi - f_lo);
      double margin = 0.02 * (s_hi - s_lo);
      if (guess > s_lo + margin && guess < s_hi - margin) s = guess;
    }
    double r = std::exp(s);
    if (r <= lo || r >= hi) break;
    double eps = epsilon_at(r);
    double f = eps - target.epsilon;
    if (f > 0.0) {
      lo = r;
      eps_lo = eps;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = r;
      eps_hi = eps;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  result.sigma = hi * sensitivity;
  result.achieved_epsilon = eps_hi;
  result.bracket_lo = lo * sensitivity;
  result.bracket_hi = hi * sensitivity;
  return result;
}

double CalibrateSigma(const PrivacyParams& target, double sampling_prob,
                      long steps, double sensitivity,
                      const CalibrationOptions& options) {
  return CalibrateSigmaDetailed(target, sampling_prob, steps, sensitivity,
                                options)
      .sigma;
}

}  // namespace fdp
