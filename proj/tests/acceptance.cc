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
// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails. Arguments select criteria by number.
#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "featuredp/audit/game.h"
#include "featuredp/audit/nonamplification.h"
#include "featuredp/audit/scalar_problem.h"
#include "featuredp/audit/suite.h"
#include "featuredp/common/rng.h"
#include "featuredp/harness/sweep.h"
#include "featuredp/harness/synth.h"
#include "featuredp/sgd/splits.h"
#include "featuredp/sgd/train.h"
#include "featuredp/tradeoff/accountant.h"
#include "featuredp/tradeoff/monte_carlo.h"
#include "featuredp/tradeoff/normal.h"
#include "featuredp/tradeoff/pair.h"
#include "featuredp/tradeoff/pld.h"

namespace fdp {
namespace {

// Pinned tolerances and sizes.
constexpr double kGaussianEpsTol = 1e-3;
constexpr double kComposeSupTol = 1e-2;
constexpr double kComposeEpsTol = 1e-2;
constexpr int64_t kMcSamples = 1000000;
constexpr double kMcConfidence = 0.99;
constexpr double kMcCellBudgetSeconds = 60.0;
constexpr double kNonampTol = 1e-9;
constexpr int64_t kSumIdentityProbes = 100000;
constexpr double kSumIdentityTol = 1e-10;
constexpr int64_t kFdProbes = 1000;
constexpr double kFdTol = 1e-5;
constexpr double kLipschitzSlack = 1e-12;
constexpr int kRiskSeeds = 20;
constexpr int64_t kGameTrials = 1000000;
constexpr double kRoundTripTol = 1e-3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string Format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string Format(const char* fmt, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, ap);
  va_end(ap);
  return buf;
}

// Epsilon solving GaussianDelta(mu, eps) = delta by bisection.
double AnalyticGaussianEpsilon(double mu, double delta) {
  if (GaussianDelta(mu, 0.0) <= delta) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (GaussianDelta(mu, hi) > delta) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (GaussianDelta(mu, mid) > delta ? lo : hi) = mid;
  }
  return hi;
}

Outcome GaussianExactness() {
  double worst = 0.0;
  for (double mu : {0.5, 1.0, 2.0, 4.0}) {
    TradeoffCurve f = GaussianTradeoff(mu);
    for (double delta : {1e-5, 1e-3, 0.1269}) {
      worst = std::max(worst, std::fabs(ToEpsilon(f, delta) -
                                        AnalyticGaussianEpsilon(mu, delta)));
    }
  }
  return {worst <= kGaussianEpsTol, Format("max|deps|=%.3g", worst)};
}

Outcome Composition() {
  std::vector<DominatingPair> pairs(100, DominatingPair::Gaussian(0.0, 0.1, 1.0));
  TradeoffCurve composed = Compose(pairs);
  TradeoffCurve reference = GaussianTradeoff(1.0);
  double sup = composed.SupDistance(reference);
  double deps = std::fabs(ToEpsilon(composed, 1e-5) - ToEpsilon(reference, 1e-5));
  return {sup <= kComposeSupTol && deps <= kComposeEpsTol,
          Format("sup=%.3g |deps|=%.3g", sup, deps)};
}

Outcome SubsampledGaussianMonteCarlo() {
  struct Cell {
    double p, ratio;
  };
  bool ok = true;
  std::string detail;
  uint64_t seed = 1;
  for (Cell c : {Cell{0.01, 1.0}, Cell{0.1, 1.0}, Cell{0.5, 0.5}}) {
    auto start = std::chrono::steady_clock::now();
    MechanismSpec spec;
    spec.sampling_prob = c.p;
    spec.sensitivity = c.ratio;
    spec.sigma = 1.0;
    TradeoffCurve analytic = SubsampledGaussianTradeoff(spec);
    const double tau = c.ratio, p = c.p;
    ScoreSampler null_scores = [](std::mt19937_64& g) {
      return std::normal_distribution<double>(0.0, 1.0)(g);
    };
    ScoreSampler alt_scores = [tau, p](std::mt19937_64& g) {
      double shift =
          std::uniform_real_distribution<double>(0.0, 1.0)(g) < p ? tau : 0.0;
      return shift + std::normal_distribution<double>(0.0, 1.0)(g);
    };
    McOptions options;
    options.confidence = kMcConfidence;
    McTradeoff mc =
        McEstimateTradeoff(null_scores, alt_scores, kMcSamples, seed++, options);
    bool inside = mc.BandContains(analytic);
    double secs = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    ok = ok && inside && secs < kMcCellBudgetSeconds;
    detail += Format("(%.2g,%.2g):%s %.1fs ", c.p, c.ratio,
                     inside ? "in" : "out", secs);
  }
  return {ok, detail + Format("n=%lld", static_cast<long long>(kMcSamples))};
}

Outcome Nonamplification() {
  NonamplificationOptions options;
  options.d = 2;
  NonamplificationResult r =
      NonamplificationDemo(std::log(2.0), {0.1, 0.5, 1.0}, options);
  double lo = 1e300, hi = -1e300;
  for (const NonamplificationRow& row : r.rows) {
    lo = std::min(lo, row.tight_epsilon);
    hi = std::max(hi, row.tight_epsilon);
  }
  bool decreasing = r.rows.size() == 3 &&
                    r.rows[0].gaussian_epsilon < r.rows[1].gaussian_epsilon &&
                    r.rows[1].gaussian_epsilon < r.rows[2].gaussian_epsilon;
  return {hi - lo <= kNonampTol && decreasing,
          Format("tight=%.12g spread=%.3g gauss=[%.4g,%.4g,%.4g]", hi, hi - lo,
                 r.rows[0].gaussian_epsilon, r.rows[1].gaussian_epsilon,
                 r.rows[2].gaussian_epsilon)};
}

Example RandomBallExample(std::mt19937_64& g, int d, int k, bool on_sphere) {
  std::normal_distribution<double> n(0.0, 1.0);
  Example x;
  x.features.resize(d);
  double norm = 0;
  for (double& v : x.features) {
    v = n(g);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  double radius = on_sphere ? 1.0
                            : std::pow(std::uniform_real_distribution<double>(0, 1)(g),
                                       1.0 / d);
  for (double& v : x.features) v *= radius / norm;
  x.label = std::uniform_int_distribution<int>(0, k - 1)(g);
  return x;
}

Outcome LogisticSplitFidelity() {
  const int d = 20, k = 5;
  LossSplit split = LogisticSplit(d, k);
  const int n = split.param_dim;
  std::mt19937_64 g(7);
  std::normal_distribution<double> wn(0.0, 3.0);
  auto random_w = [&] {
    std::vector<double> w(n);
    for (double& v : w) v = wn(g);
    return w;
  };

  double worst_sum = 0.0;
  double max_priv = 0.0, max_full = 0.0;
  int64_t violations = 0;
  std::vector<double> priv(n), full(n);
  for (int64_t i = 0; i < kSumIdentityProbes; ++i) {
    std::vector<double> w = random_w();
    Example x = RandomBallExample(g, d, k, i % 2 == 0);
    worst_sum = std::max(worst_sum, SumIdentityError(split, w, x, i));
    std::fill(priv.begin(), priv.end(), 0.0);
    std::fill(full.begin(), full.end(), 0.0);
    split.priv_grad(w.data(), x, i, priv.data());
    split.full_grad(w.data(), x, full.data());
    double np = Norm2(priv.data(), n), nf = Norm2(full.data(), n);
    max_priv = std::max(max_priv, np);
    max_full = std::max(max_full, nf);
    if (np > 1.0 + kLipschitzSlack || nf > std::sqrt(2.0) + kLipschitzSlack) {
      ++violations;
    }
  }

  // Central differences of the loss along a random unit direction.
  double worst_fd = 0.0;
  for (int64_t i = 0; i < kFdProbes; ++i) {
    std::vector<double> w = random_w();
    for (double& v : w) v /= 3.0;
    Example x = RandomBallExample(g, d, k, false);
    std::vector<double> dir = random_w();
    double dn = Norm2(dir.data(), n);
    for (double& v : dir) v /= dn;
    std::fill(full.begin(), full.end(), 0.0);
    split.full_grad(w.data(), x, full.data());
    double analytic = 0.0;
    for (int j = 0; j < n; ++j) analytic += full[j] * dir[j];
    const double h = 1e-5;
    std::vector<double> wp = w, wm = w;
    for (int j = 0; j < n; ++j) {
      wp[j] += h * dir[j];
      wm[j] -= h * dir[j];
    }
    double fd = (split.loss(wp.data(), x) - split.loss(wm.data(), x)) / (2 * h);
    double scale = std::max(Norm2(full.data(), n), 1e-8);
    worst_fd = std::max(worst_fd, std::fabs(fd - analytic) / scale);
  }
  bool pass = worst_sum <= kSumIdentityTol && worst_fd <= kFdTol &&
              violations == 0 && max_priv <= 1.0 + kLipschitzSlack &&
              max_full <= std::sqrt(2.0) + kLipschitzSlack;
  return {pass, Format("sum=%.3g fd=%.3g max|priv|=%.6f max|full|=%.6f "
                       "violations=%lld",
                       worst_sum, worst_fd, max_priv, max_full,
                       static_cast<long long>(violations))};
}

struct RiskRun {
  double mean_excess = 0.0;
  double bound = 0.0;
};

RiskRun QuadraticExcessRisk(bool strongly_convex) {
  const double lambda = 0.5, noise_std = 0.1, weight_radius = 2.0;
  const int d = 10;
  const int64_t steps = 10000;
  SynthOptions o;
  o.kind = SynthKind::kStronglyConvexQuadratic;
  o.size = 500;
  o.dims = d;
  o.lambda = lambda;
  o.seed = 3;
  SynthResult synth = SynthGenerate(o);
  const FeatureDataset& data = synth.dataset.data;
  LossSplit split = MakeSplitForDataset("quadratic", synth.dataset, lambda,
                                        weight_radius);
  const double tau_full = split.full_lipschitz;
  const double risk_star = EmpiricalRisk(data, split, synth.minimizer);

  TrainConfig cfg;
  cfg.priv_batch_expected = 50;
  cfg.pub_batch = static_cast<int64_t>(data.examples.size());
  cfg.steps = steps;
  cfg.lambda = lambda;
  cfg.projection_radius = weight_radius;
  cfg.account = false;
  cfg.sigma = noise_std / EffectiveClip(split, cfg, false);
  const double log_t = std::log(static_cast<double>(steps));
  RiskRun out;
  if (strongly_convex) {
    cfg.lr_schedule = LrSchedule::kInverseT;
    out.bound = 17.0 * (tau_full * tau_full + d * noise_std * noise_std) *
                (1.0 + log_t) / (lambda * steps);
  } else {
    const double c = DefaultLrConstant(weight_radius, tau_full, d, noise_std);
    cfg.lr_schedule = LrSchedule::kInverseSqrt;
    cfg.lr = c;
    out.bound = (weight_radius * weight_radius / c + c * tau_full * tau_full +
                 c * d * noise_std * noise_std) *
                (2.0 + log_t) / std::sqrt(static_cast<double>(steps));
  }
  double total = 0.0;
  for (int s = 0; s < kRiskSeeds; ++s) {
    cfg.seed = 1000 + s;
    TrainReport r = TrainFdpSgd(data, split, cfg);
    total += EmpiricalRisk(data, split, r.final_weights) - risk_star;
  }
  out.mean_excess = total / kRiskSeeds;
  return out;
}

Outcome UtilityBounds() {
  RiskRun sc = QuadraticExcessRisk(true);
  RiskRun cv = QuadraticExcessRisk(false);
  return {sc.mean_excess <= sc.bound && cv.mean_excess <= cv.bound,
          Format("strongly-convex %.3g<=%.3g convex %.3g<=%.3g", sc.mean_excess,
                 sc.bound, cv.mean_excess, cv.bound)};
}

Outcome UtilityGain() {
  SynthOptions o;
  o.kind = SynthKind::kPurchaseLike;
  o.size = 10000;
  o.dims = 600;
  o.num_public = 100;
  o.seed = 1;
  SynthResult synth = SynthGenerate(o);
  SweepSpec spec;
  spec.epsilon_grid = {4.0, 8.0};
  spec.methods = {"fdp-sgd", "dpsgd"};
  spec.repeats = 5;
  spec.split = "padding";
  spec.base_config = {{"priv_batch_expected", 100}, {"pub_batch", 100},
                      {"steps", 1000}, {"lr", 10.0}};
  SweepResults res = RunSweep(synth.dataset, spec);
  bool pass = true;
  std::string detail;
  for (double eps : spec.epsilon_grid) {
    const SweepRow* fdp = nullptr;
    const SweepRow* dp = nullptr;
    for (const SweepRow& r : res.rows) {
      if (r.epsilon_target != eps) continue;
      if (r.method == "fdp-sgd") fdp = &r;
      if (r.method == "dpsgd") dp = &r;
    }
    if (!fdp || !dp || !fdp->ok() || !dp->ok()) {
      return {false, Format("eps=%g: missing or failed row", eps)};
    }
    double pooled = std::sqrt(0.5 * (fdp->accuracy_std * fdp->accuracy_std +
                                     dp->accuracy_std * dp->accuracy_std));
    double gap = fdp->accuracy_mean - dp->accuracy_mean;
    pass = pass && gap > pooled;
    detail += Format("eps=%g fdp=%.4f dpsgd=%.4f gap=%.4f pooled_std=%.4f; ", eps,
                     fdp->accuracy_mean, dp->accuracy_mean, gap, pooled);
  }
  return {pass, detail};
}

Outcome AttributeBound() {
  SuiteOptions options;
  options.mc_trials = 0;
  std::vector<BoundReport> honest = AttributeBoundSuite(options);
  options.understate = true;
  std::vector<BoundReport> understated = AttributeBoundSuite(options);
  int honest_fail = 0, understated_fail = 0;
  for (const BoundReport& r : honest) honest_fail += r.passed ? 0 : 1;
  for (const BoundReport& r : understated) understated_fail += r.passed ? 0 : 1;
  return {!honest.empty() && honest_fail == 0 && understated_fail >= 1,
          Format("instances=%zu failures=%d understated_failures=%d",
                 honest.size(), honest_fail, understated_fail)};
}

Outcome ScalarGameCheck() {
  ScalarProblem problem = DefaultScalarProblem();
  bool pass = true;
  std::string detail;
  for (int bit : {0, 1}) {
    GameReport r = ScalarDistinguishingGame(problem, bit, kGameTrials, 11 + bit);
    pass = pass && r.passed;
    detail += Format("bit=%d worst_violation=%.3g band=%.3g; ", bit,
                     r.worst_violation, r.empirical.band_epsilon);
  }
  return {pass, detail};
}

Outcome CalibrationRoundTrip() {
  const long steps = 1000;
  const double delta = 1e-5;
  double worst = 0.0;
  for (double eps : {0.5, 2.0, 8.0}) {
    for (double p : {0.001, 0.01, 0.1}) {
      double sigma = CalibrateSigma({eps, delta}, p, steps, 1.0);
      MechanismSpec spec;
      spec.sigma = sigma;
      spec.sampling_prob = p;
      spec.steps = steps;
      worst = std::max(worst, std::fabs(EpsilonForMechanism(spec, delta) - eps));
    }
  }
  return {worst <= kRoundTripTol, Format("max|deps|=%.3g", worst)};
}

}  // namespace
}  // namespace fdp

int main(int argc, char** argv) {
  using fdp::Criterion;
  const std::vector<Criterion> criteria = {
      {1, "gaussian-accountant-exactness", 1.0, fdp::GaussianExactness},
      {2, "composition-correctness", 10.0, fdp::Composition},
      {3, "subsampled-gaussian-vs-monte-carlo", 180.0,
       fdp::SubsampledGaussianMonteCarlo},
      {4, "nonamplification", 5.0, fdp::Nonamplification},
      {5, "logistic-split-fidelity", 30.0, fdp::LogisticSplitFidelity},
      {6, "excess-risk-bounds", 300.0, fdp::UtilityBounds},
      {7, "directional-utility-gain", 600.0, fdp::UtilityGain},
      {8, "attribute-inference-bound", 120.0, fdp::AttributeBound},
      {9, "distinguishing-game", 300.0, fdp::ScalarGameCheck},
      {10, "calibration-round-trip", 120.0, fdp::CalibrationRoundTrip},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    auto start = std::chrono::steady_clock::now();
    fdp::Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
    bool in_budget = secs < c.budget_seconds;
    bool pass = out.pass && in_budget;
    failures += pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.2fs, budget %.0fs%s]\n", pass ? "PASS" : "FAIL",
                c.id, c.name, out.detail.c_str(), secs, c.budget_seconds,
                in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
