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
#include "featuredp/audit/nonamplification.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/curve.h"

namespace fdp {
namespace {

double EventProbability(const RrDistribution& dist, const BitRecord& member) {
  double total = 0.0;
  for (const auto& [o, p] : dist) {
    if (std::find(o.begin(), o.end(), member) != o.end()) total += p;
  }
  return total;
}

double TightEpsilon(double epsilon, double p, int d, RrVariant variant,
                    const std::vector<BitRecord>& known) {
  double worst = 0.0;
  for (uint32_t mask = 0; mask < (1u << d); ++mask) {
    BitRecord x(d);
    for (int i = 0; i < d; ++i) x[i] = (mask >> i) & 1u;
    BitRecord filler = x;
    filler[0] = 0;
    std::vector<BitRecord> with_x = known, with_filler = known;
    with_x.push_back(x);
    with_filler.push_back(filler);
    worst = std::max(
        worst, MaxLogRatio(EnumerateRrSubsampled(with_x, epsilon, p, variant),
                           EnumerateRrSubsampled(with_filler, epsilon, p,
                                                 variant)));
  }
  return worst;
}

}  // namespace

NonamplificationResult NonamplificationDemo(
    double epsilon, const std::vector<double>& probs,
    const NonamplificationOptions& options) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (options.d < 1 || options.d > 4) {
    throw DomainError("exact enumeration supports 1 <= d <= 4");
  }
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0, 1]");
  }
  const int d = options.d;
  const BitRecord a(d, 0);
  const BitRecord b(d, 1);
  BitRecord c = b;
  c[0] = 0;

  NonamplificationResult result;
  result.epsilon = epsilon;
  result.options = options;

  const double tight_full =
      TightEpsilon(epsilon, 1.0, d, options.variant, {a});
  if (std::isfinite(tight_full)) {
    CalibrationOptions copts;
    result.gaussian_sigma = CalibrateSigma({tight_full, options.delta}, 1.0, 1,
                                           1.0, copts);
  }

  for (size_t k = 0; k < probs.size(); ++k) {
    const double p = probs[k];
    NonamplificationRow row;
    row.p = p;
    row.tight_epsilon = TightEpsilon(epsilon, p, d, options.variant, {a});
    RrDistribution m_b = EnumerateRrSubsampled({a, b}, epsilon, p,
                                               options.variant);
    RrDistribution m_c = EnumerateRrSubsampled({a, c}, epsilon, p,
                                               options.variant);
    row.q_b = EventProbability(m_b, b);
    row.q_c = EventProbability(m_c, b);
    row.simulator_lower_bound =
        row.q_b > 0.0 && row.q_c > 0.0 ? 0.5 * std::log(row.q_b / row.q_c)
                                       : 0.0;
    row.q_b_mc = row.q_c_mc = std::numeric_limits<double>::quiet_NaN();
    if (options.n_samples > 0) {
      int64_t hits_b = 0, hits_c = 0;
      for (int64_t i = 0; i < options.n_samples; ++i) {
        uint64_t s = DeriveSeed(options.seed, {k, static_cast<uint64_t>(i)});
        auto out_b = RrSubsampled({a, b}, epsilon, p, s, options.variant);
        auto out_c = RrSubsampled({a, c}, epsilon, p, s, options.variant);
        hits_b += std::find(out_b.begin(), out_b.end(), b) != out_b.end();
        hits_c += std::find(out_c.begin(), out_c.end(), b) != out_c.end();
      }
      row.q_b_mc = static_cast<double>(hits_b) / options.n_samples;
      row.q_c_mc = static_cast<double>(hits_c) / options.n_samples;
    }
    if (result.gaussian_sigma > 0.0) {
      MechanismSpec spec;
      spec.sensitivity = 1.0;
      spec.sigma = result.gaussian_sigma;
      spec.sampling_prob = p;
      spec.steps = 1;
      row.gaussian_epsilon =
          p == 0.0 ? 0.0 : EpsilonForMechanism(spec, options.delta);
    }
    result.rows.push_back(row);
  }

  // Monotonicity in p over rows with p > 0, regardless of input order.
  std::vector<NonamplificationRow> sorted;
  for (const auto& r : result.rows) {
    if (r.p > 0.0) sorted.push_back(r);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& x, const auto& y) { return x.p < y.p; });
  for (size_t i = 1; i < sorted.size(); ++i) {
    // Moving from sorted[i] down to sorted[i - 1] decreases p.
    if (sorted[i - 1].tight_epsilon < sorted[i].tight_epsilon - 1e-9) {
      result.tight_nonincreasing_in_p = false;
    }
    if (std::fabs(sorted[i - 1].tight_epsilon - sorted[i].tight_epsilon) >
        1e-9) {
      result.tight_constant = false;
    }
    if (sorted[i].p > sorted[i - 1].p &&
        !(sorted[i - 1].gaussian_epsilon < sorted[i].gaussian_epsilon)) {
      result.gaussian_strictly_decreasing = false;
    }
  }
  return result;
}

nlohmann::json NonamplificationResult::ToJson() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"p", r.p},
                          {"tight_epsilon", EpsilonToJson(r.tight_epsilon)},
                          {"q_b", r.q_b},
                          {"q_c", r.q_c},
                          {"simulator_lower_bound", r.simulator_lower_bound},
                          {"gaussian_epsilon", r.gaussian_epsilon}};
    if (!std::isnan(r.q_b_mc)) {
      row["q_b_mc"] = r.q_b_mc;
      row["q_c_mc"] = r.q_c_mc;
    }
    rows_json.push_back(row);
  }
  return {{"schema_version", 1},
          {"game", "noamp"},
          {"epsilon", epsilon},
          {"d", options.d},
          {"variant", options.variant == RrVariant::kDoubleEpsilon
                          ? "double-epsilon"
                          : "half-exp"},
          {"delta", options.delta},
          {"gaussian_sigma", gaussian_sigma},
          {"tight_nonincreasing_in_p", tight_nonincreasing_in_p},
          {"tight_constant", tight_constant},
          {"gaussian_strictly_decreasing", gaussian_strictly_decreasing},
          {"rows", rows_json}};
}

std::string NonamplificationResult::ToCsv() const {
  std::ostringstream out;
  out << "p,tight_epsilon,simulator_lower_bound,gaussian_epsilon\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", r.p,
                  r.tight_epsilon, r.simulator_lower_bound,
                  r.gaussian_epsilon);
    out << buf;
  }
  return out.str();
}

}  // namespace fdp
