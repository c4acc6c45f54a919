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
#include "featuredp/tradeoff/monte_carlo.h"

#include <algorithm>
#include <cmath>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"

namespace fdp {
namespace {

constexpr int64_t kMinSamples = 10000;

struct Path {
  std::vector<double> alpha;
  std::vector<double> beta;

  // Highest and lowest beta of the path at the given alpha.
  void Evaluate(double a, double* hi, double* lo) const {
    auto first = std::lower_bound(alpha.begin(), alpha.end(), a);
    if (first == alpha.end()) {
      *hi = *lo = beta.back();
      return;
    }
    size_t i = static_cast<size_t>(first - alpha.begin());
    if (alpha[i] == a) {
      size_t j = i;
      while (j + 1 < alpha.size() && alpha[j + 1] == a) ++j;
      *hi = beta[i];
      *lo = beta[j];
      return;
    }
    double t = (a - alpha[i - 1]) / (alpha[i] - alpha[i - 1]);
    *hi = *lo = beta[i - 1] + t * (beta[i] - beta[i - 1]);
  }
};

}  // namespace

bool McTradeoff::BandContains(const TradeoffCurve& reference,
                              double slack) const {
  for (size_t i = 0; i < alphas.size(); ++i) {
    double r = reference(alphas[i]);
    if (r < lower[i] - slack || r > upper[i] + slack) return false;
  }
  return true;
}

bool McTradeoff::ConsistentWithLowerBound(const TradeoffCurve& reference,
                                          double slack) const {
  return WorstLowerBoundViolation(reference) <= slack;
}

double McTradeoff::WorstLowerBoundViolation(
    const TradeoffCurve& reference) const {
  double worst = 0.0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    worst = std::max(worst, reference(alphas[i]) - upper[i]);
  }
  return worst;
}

McTradeoff McTradeoffFromScores(std::vector<double> scores_p,
                                std::vector<double> scores_q,
                                const McOptions& options) {
  if (scores_p.empty() || scores_q.empty()) {
    throw DomainError("need scores from both distributions");
  }
  if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
    throw DomainError("confidence must lie in (0, 1)");
  }
  for (double s : scores_p) {
    if (std::isnan(s)) throw DomainError("NaN score");
  }
  for (double s : scores_q) {
    if (std::isnan(s)) throw DomainError("NaN score");
  }
  std::sort(scores_p.begin(), scores_p.end());
  std::sort(scores_q.begin(), scores_q.end());
  const double np = static_cast<double>(scores_p.size());
  const double nq = static_cast<double>(scores_q.size());

  McTradeoff out;
  out.samples_p = static_cast<int64_t>(scores_p.size());
  out.samples_q = static_cast<int64_t>(scores_q.size());
  // Each CDF gets half of the failure probability.
  double fail = (1.0 - options.confidence) / 2.0;
  out.band_epsilon =
      std::sqrt(std::log(2.0 / fail) / (2.0 * std::min(np, nq)));

  const AlphaGrid& grid = StandardAlphaGrid(options.grid_size);
  out.alphas = grid.alphas;
  const size_t g = out.alphas.size();

  if (scores_p.front() == scores_p.back() &&
      scores_q.front() == scores_q.back() &&
      scores_p.front() == scores_q.front()) {
    out.degenerate = true;
    out.warning = "degenerate scores: no variation, returning f(a) = 1 - a";
    out.curve = TradeoffCurve::Identity(options.grid_size);
    out.empirical.resize(g);
    out.lower.resize(g);
    out.upper.resize(g);
    for (size_t i = 0; i < g; ++i) {
      out.empirical[i] = 1.0 - out.alphas[i];
      out.lower[i] = std::max(0.0, out.empirical[i] - 2 * out.band_epsilon);
      out.upper[i] = std::min(1.0, out.empirical[i] + 2 * out.band_epsilon);
    }
    return out;
  }

  // Sweep the threshold downward through the distinct scores.
  Path path;
  path.alpha.reserve(scores_p.size() + scores_q.size() + 2);
  path.beta.reserve(scores_p.size() + scores_q.size() + 2);
  path.alpha.push_back(0.0);
  path.beta.push_back(1.0);
  int64_t ip = static_cast<int64_t>(scores_p.size()) - 1;
  int64_t iq = static_cast<int64_t>(scores_q.size()) - 1;
  int64_t rejected_p = 0, rejected_q = 0;
  while (ip >= 0 || iq >= 0) {
    double v = ip < 0 ? scores_q[iq]
               : iq < 0 ? scores_p[ip]
                        : std::max(scores_p[ip], scores_q[iq]);
    while (ip >= 0 && scores_p[ip] == v) {
      --ip;
      ++rejected_p;
    }
    while (iq >= 0 && scores_q[iq] == v) {
      --iq;
      ++rejected_q;
    }
    path.alpha.push_back(static_cast<double>(rejected_p) / np);
    path.beta.push_back(1.0 - static_cast<double>(rejected_q) / nq);
  }
  path.alpha.back() = 1.0;
  path.beta.back() = 0.0;

  const double e = out.band_epsilon;
  out.empirical.resize(g);
  out.lower.resize(g);
  out.upper.resize(g);
  for (size_t i = 0; i < g; ++i) {
    double a = out.alphas[i];
    double hi, lo;
    path.Evaluate(a, &hi, &lo);
    out.empirical[i] = lo;
    double hi_shift, lo_shift;
    path.Evaluate(std::min(1.0, a + e), &hi_shift, &lo_shift);
    out.lower[i] = std::max(0.0, lo_shift - e);
    path.Evaluate(std::max(0.0, a - e), &hi_shift, &lo_shift);
    out.upper[i] = std::min(1.0, hi_shift + e);
  }
  out.curve = TradeoffCurve::PessimisticRepair(out.alphas, out.empirical);
  return out;
}

McTradeoff McEstimateTradeoff(const ScoreSampler& sampler_p,
                              const ScoreSampler& sampler_q, int64_t n_samples,
                              uint64_t seed, const McOptions& options) {
  if (n_samples < kMinSamples) {
    throw DomainError("mc_estimate_tradeoff needs at least 10^4 samples");
  }
  const uint64_t stream_p = StreamId("mc-tradeoff/p");
  const uint64_t stream_q = StreamId("mc-tradeoff/q");
  std::vector<double> sp, sq;
  if (options.serial) {
    sp = kernels::SampleScoresSerial(sampler_p, n_samples, seed, stream_p);
    sq = kernels::SampleScoresSerial(sampler_q, n_samples, seed, stream_q);
  } else {
    sp = kernels::SampleScores(sampler_p, n_samples, seed, stream_p);
    sq = kernels::SampleScores(sampler_q, n_samples, seed, stream_q);
  }
  return McTradeoffFromScores(std::move(sp), std::move(sq), options);
}

}  // namespace fdp
