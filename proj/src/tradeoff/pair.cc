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
#include "featuredp/tradeoff/pair.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "featuredp/common/errors.h"
#include "featuredp/tradeoff/normal.h"

namespace fdp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNormalizationTolerance = 1e-9;

std::string FormatKey(const char* prefix, std::initializer_list<double> xs) {
  std::string key = prefix;
  char buf[32];
  for (double x : xs) {
    std::snprintf(buf, sizeof(buf), ":%.17g", x);
    key += buf;
  }
  return key;
}

// Finds x in the interval with fn(x) crossing target, for non-decreasing fn.
// Returns the smallest x (up to bisection resolution) with fn(x) >= target.
double SolveIncreasing(const std::function<double(double)>& fn, double target,
                       Interval support) {
  double lo = support.lower, hi = support.upper;
  if (std::isinf(lo)) {
    lo = std::isinf(hi) ? -1.0 : std::min(hi - 1.0, -1.0);
    while (fn(lo) >= target) {
      if (lo < -1e300) return support.lower;
      lo *= 2.0;
    }
  } else if (fn(lo) >= target) {
    return lo;
  }
  if (std::isinf(hi)) {
    hi = std::max(lo + 1.0, 1.0);
    while (fn(hi) < target) {
      if (hi > 1e300) return support.upper;
      hi *= 2.0;
    }
  } else if (fn(hi) < target) {
    return hi;
  }
  for (int it = 0; it < 400; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (fn(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

// log(1 - p + p e^a) without overflow or cancellation.
double LogMixture(double p, double a) {
  if (p <= 0.0) return 0.0;
  if (a > 0.0) return a + std::log(p + (1.0 - p) * std::exp(-a));
  return std::log1p(p * std::expm1(a));
}

}  // namespace

DominatingPair DominatingPair::Continuous(ContinuousSpec spec) {
  if (!spec.log_density_p || !spec.log_density_q) {
    throw DomainError("continuous pair needs both log densities");
  }
  if (!(spec.support.lower < spec.support.upper)) {
    throw DomainError("empty support interval");
  }
  if (spec.monotone_lr && !spec.lr_increasing) {
    // Reflect x -> -x so the likelihood ratio increases.
    ContinuousSpec r;
    auto neg = [](const Fn& f) -> Fn {
      if (!f) return nullptr;
      return [f](double x) { return f(-x); };
    };
    r.log_density_p = neg(spec.log_density_p);
    r.log_density_q = neg(spec.log_density_q);
    r.support = {-spec.support.upper, -spec.support.lower};
    r.monotone_lr = true;
    r.lr_increasing = true;
    r.cdf_p = neg(spec.sf_p);
    r.sf_p = neg(spec.cdf_p);
    r.cdf_q = neg(spec.sf_q);
    r.sf_q = neg(spec.cdf_q);
    if (spec.inverse_llr) {
      Fn inv = spec.inverse_llr;
      r.inverse_llr = [inv](double l) { return -inv(l); };
    }
    r.llr_min = spec.llr_min;
    r.llr_max = spec.llr_max;
    r.key = spec.key.empty() ? "" : spec.key + "|reflect";
    spec = std::move(r);
  }
  DominatingPair pair;
  pair.discrete_ = false;
  pair.key_ = spec.key;
  pair.spec_ = std::move(spec);
  return pair;
}

DominatingPair DominatingPair::Discrete(std::vector<double> points,
                                        std::vector<double> pmf_p,
                                        std::vector<double> pmf_q,
                                        std::string key) {
  if (points.size() != pmf_p.size() || points.size() != pmf_q.size() ||
      points.empty()) {
    throw DomainError("discrete pair needs equally sized non-empty pmfs");
  }
  DominatingPair pair;
  pair.discrete_ = true;
  pair.key_ = std::move(key);
  pair.points_ = std::move(points);
  pair.pmf_p_ = std::move(pmf_p);
  pair.pmf_q_ = std::move(pmf_q);
  return pair;
}

DominatingPair DominatingPair::Gaussian(double mean_p, double mean_q,
                                        double sd) {
  if (!(sd > 0.0)) throw DomainError("standard deviation must be positive");
  if (mean_q < mean_p) {
    mean_p = -mean_p;
    mean_q = -mean_q;
  }
  double diff = mean_q - mean_p;
  ContinuousSpec s;
  s.log_density_p = [=](double x) {
    return NormalLogPdf((x - mean_p) / sd) - std::log(sd);
  };
  s.log_density_q = [=](double x) {
    return NormalLogPdf((x - mean_q) / sd) - std::log(sd);
  };
  s.monotone_lr = true;
  s.cdf_p = [=](double x) { return NormalCdf((x - mean_p) / sd); };
  s.sf_p = [=](double x) { return NormalSf((x - mean_p) / sd); };
  s.cdf_q = [=](double x) { return NormalCdf((x - mean_q) / sd); };
  s.sf_q = [=](double x) { return NormalSf((x - mean_q) / sd); };
  s.inverse_sf_p = [=](double a) {
    return mean_p + sd * NormalUpperQuantile(a);
  };
  if (diff > 0.0) {
    s.inverse_llr = [=](double l) {
      return l * sd * sd / diff + 0.5 * (mean_p + mean_q);
    };
  } else {
    s.inverse_llr = [](double l) { return l <= 0.0 ? -kInf : kInf; };
    s.llr_min = 0.0;
    s.llr_max = 0.0;
  }
  s.key = FormatKey("gaussian", {0.0, diff / sd});
  DominatingPair pair = Continuous(std::move(s));
  pair.validated_ = true;
  return pair;
}

DominatingPair DominatingPair::SubsampledGaussian(double sampling_prob,
                                                  double sensitivity,
                                                  double sigma) {
  if (!(sampling_prob >= 0.0 && sampling_prob <= 1.0)) {
    throw DomainError("sampling probability must lie in [0, 1]");
  }
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(sensitivity >= 0.0)) throw DomainError("sensitivity must be >= 0");
  const double p = sampling_prob, tau = sensitivity;
  if (p == 0.0 || tau == 0.0) {
    DominatingPair pair = Gaussian(0.0, 0.0, sigma);
    pair.key_ = pair.spec_.key = "identity";
    return pair;
  }
  ContinuousSpec s;
  auto a_of = [=](double x) { return (tau * x - 0.5 * tau * tau) / (sigma * sigma); };
  s.log_density_p = [=](double x) {
    return NormalLogPdf(x / sigma) - std::log(sigma);
  };
  s.log_density_q = [=](double x) {
    return NormalLogPdf(x / sigma) - std::log(sigma) + LogMixture(p, a_of(x));
  };
  s.monotone_lr = true;
  s.cdf_p = [=](double x) { return NormalCdf(x / sigma); };
  s.sf_p = [=](double x) { return NormalSf(x / sigma); };
  s.cdf_q = [=](double x) {
    return (1.0 - p) * NormalCdf(x / sigma) + p * NormalCdf((x - tau) / sigma);
  };
  s.sf_q = [=](double x) {
    return (1.0 - p) * NormalSf(x / sigma) + p * NormalSf((x - tau) / sigma);
  };
  s.inverse_sf_p = [=](double a) { return sigma * NormalUpperQuantile(a); };
  const double llr_min = p < 1.0 ? std::log1p(-p) : -kInf;
  s.llr_min = llr_min;
  s.inverse_llr = [=](double l) {
    if (l <= llr_min) return -kInf;
    // Solve 1 - p + p e^a = e^l for a.
    double a;
    if (l > 1.0) {
      a = l + std::log1p((p - 1.0) * std::exp(-l)) - std::log(p);
    } else {
      a = std::log(std::expm1(l) + p) - std::log(p);
    }
    return a * sigma * sigma / tau + 0.5 * tau;
  };
  s.key = FormatKey("subsampled-gaussian", {p, tau / sigma});
  DominatingPair pair = Continuous(std::move(s));
  pair.validated_ = true;
  return pair;
}

DominatingPair DominatingPair::Swapped() const {
  if (discrete_) {
    DominatingPair pair = *this;
    std::swap(pair.pmf_p_, pair.pmf_q_);
    if (!key_.empty()) pair.key_ = key_ + "|swap";
    return pair;
  }
  auto self = std::make_shared<DominatingPair>(*this);
  ContinuousSpec s;
  s.monotone_lr = spec_.monotone_lr;
  s.lr_increasing = true;
  s.key = key_.empty() ? "" : key_ + "|swap";
  if (!spec_.monotone_lr) {
    s.log_density_p = spec_.log_density_q;
    s.log_density_q = spec_.log_density_p;
    s.support = spec_.support;
    s.cdf_p = spec_.cdf_q;
    s.sf_p = spec_.sf_q;
    s.cdf_q = spec_.cdf_p;
    s.sf_q = spec_.sf_p;
  } else {
    // (Q, P) has a decreasing ratio; reflect it back to increasing.
    s.log_density_p = [self](double x) { return self->spec_.log_density_q(-x); };
    s.log_density_q = [self](double x) { return self->spec_.log_density_p(-x); };
    s.support = {-spec_.support.upper, -spec_.support.lower};
    s.cdf_p = [self](double x) { return self->SfQ(-x); };
    s.sf_p = [self](double x) { return self->CdfQ(-x); };
    s.cdf_q = [self](double x) { return self->SfP(-x); };
    s.sf_q = [self](double x) { return self->CdfP(-x); };
    s.inverse_llr = [self](double l) { return -self->InverseLlr(-l); };
    s.llr_min = -LlrMax();
    s.llr_max = -LlrMin();
  }
  DominatingPair pair;
  pair.discrete_ = false;
  pair.validated_ = validated_;
  pair.key_ = s.key;
  pair.spec_ = std::move(s);
  return pair;
}

void DominatingPair::Validate() const {
  if (validated_) return;
  if (discrete_) {
    double sp = 0.0, sq = 0.0;
    for (size_t i = 0; i < points_.size(); ++i) {
      if (pmf_p_[i] < 0.0 || pmf_q_[i] < 0.0) {
        throw DomainError("negative probability mass in discrete pair");
      }
      sp += pmf_p_[i];
      sq += pmf_q_[i];
    }
    if (std::abs(sp - 1.0) > kNormalizationTolerance ||
        std::abs(sq - 1.0) > kNormalizationTolerance) {
      throw DomainError("discrete pair is not normalized");
    }
    return;
  }
  const Fn& lp = spec_.log_density_p;
  const Fn& lq = spec_.log_density_q;
  double mp = Integrate([&](double x) { return std::exp(lp(x)); },
                        spec_.support.lower, spec_.support.upper);
  double mq = Integrate([&](double x) { return std::exp(lq(x)); },
                        spec_.support.lower, spec_.support.upper);
  if (std::abs(mp - 1.0) > kNormalizationTolerance ||
      std::abs(mq - 1.0) > kNormalizationTolerance) {
    throw DomainError("continuous pair densities integrate to " +
                      std::to_string(mp) + " and " + std::to_string(mq));
  }
}

double DominatingPair::CdfP(double x) const {
  if (spec_.cdf_p) return spec_.cdf_p(x);
  if (spec_.sf_p) return 1.0 - spec_.sf_p(x);
  if (x <= spec_.support.lower) return 0.0;
  const Fn& lp = spec_.log_density_p;
  return Integrate([&](double t) { return std::exp(lp(t)); },
                   spec_.support.lower, std::min(x, spec_.support.upper));
}

double DominatingPair::SfP(double x) const {
  if (spec_.sf_p) return spec_.sf_p(x);
  if (spec_.cdf_p) return 1.0 - spec_.cdf_p(x);
  if (x >= spec_.support.upper) return 0.0;
  const Fn& lp = spec_.log_density_p;
  return Integrate([&](double t) { return std::exp(lp(t)); },
                   std::max(x, spec_.support.lower), spec_.support.upper);
}

double DominatingPair::CdfQ(double x) const {
  if (spec_.cdf_q) return spec_.cdf_q(x);
  if (spec_.sf_q) return 1.0 - spec_.sf_q(x);
  if (x <= spec_.support.lower) return 0.0;
  const Fn& lq = spec_.log_density_q;
  return Integrate([&](double t) { return std::exp(lq(t)); },
                   spec_.support.lower, std::min(x, spec_.support.upper));
}

double DominatingPair::SfQ(double x) const {
  if (spec_.sf_q) return spec_.sf_q(x);
  if (spec_.cdf_q) return 1.0 - spec_.cdf_q(x);
  if (x >= spec_.support.upper) return 0.0;
  const Fn& lq = spec_.log_density_q;
  return Integrate([&](double t) { return std::exp(lq(t)); },
                   std::max(x, spec_.support.lower), spec_.support.upper);
}

double DominatingPair::Llr(double x) const {
  return spec_.log_density_q(x) - spec_.log_density_p(x);
}

double DominatingPair::InverseLlr(double level) const {
  if (spec_.inverse_llr) {
    double x = spec_.inverse_llr(level);
    return std::clamp(x, spec_.support.lower, spec_.support.upper);
  }
  return SolveIncreasing([this](double x) { return Llr(x); }, level,
                         spec_.support);
}

double DominatingPair::InverseSfP(double alpha) const {
  if (alpha <= 0.0) return spec_.support.upper;
  if (alpha >= 1.0) return spec_.support.lower;
  if (spec_.inverse_sf_p) return spec_.inverse_sf_p(alpha);
  // SfP is non-increasing; solve -SfP(x) >= -alpha.
  return SolveIncreasing([this](double x) { return -SfP(x); }, -alpha,
                         spec_.support);
}

double DominatingPair::LlrMin() const {
  if (!discrete_) return spec_.llr_min;
  double m = kInf;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (pmf_q_[i] <= 0.0) continue;
    m = std::min(m, pmf_p_[i] <= 0.0 ? kInf : std::log(pmf_q_[i] / pmf_p_[i]));
  }
  return m;
}

double DominatingPair::LlrMax() const {
  if (!discrete_) return spec_.llr_max;
  double m = -kInf;
  for (size_t i = 0; i < points_.size(); ++i) {
    if (pmf_q_[i] <= 0.0) continue;
    m = std::max(m, pmf_p_[i] <= 0.0 ? kInf : std::log(pmf_q_[i] / pmf_p_[i]));
  }
  return m;
}

double HockeyStick(const DominatingPair& pair, double order) {
  if (!(order >= 0.0)) throw DomainError("hockey-stick order must be >= 0");
  pair.Validate();
  if (order == 0.0) return 1.0;
  if (pair.is_discrete()) {
    double total = 0.0;
    for (size_t i = 0; i < pair.points().size(); ++i) {
      total += std::max(0.0, pair.pmf_p()[i] - order * pair.pmf_q()[i]);
    }
    return std::min(total, 1.0);
  }
  if (pair.monotone_lr()) {
    // p > order * q exactly on {x < x*} where log(q/p)(x*) = -log(order).
    double level = -std::log(order);
    if (level <= pair.LlrMin()) return 0.0;
    if (level > pair.LlrMax()) return std::max(0.0, 1.0 - order);
    double x = pair.InverseLlr(level);
    double cdf_p = pair.CdfP(x);
    double value;
    if (cdf_p <= 0.5) {
      value = cdf_p - order * pair.CdfQ(x);
    } else {
      value = (1.0 - order) - pair.SfP(x) + order * pair.SfQ(x);
    }
    return std::clamp(value, 0.0, 1.0);
  }
  const auto& s = pair.spec();
  double value = Integrate(
      [&](double x) {
        return std::max(0.0, std::exp(s.log_density_p(x)) -
                                 order * std::exp(s.log_density_q(x)));
      },
      s.support.lower, s.support.upper);
  return std::clamp(value, 0.0, 1.0);
}

TradeoffCurve TradeoffFromPair(const DominatingPair& pair, int grid_size) {
  pair.Validate();
  if (pair.is_discrete()) {
    // Reject atoms in decreasing order of q/p; randomizing on an atom
    // traces the segment between consecutive vertices.
    const auto& p = pair.pmf_p();
    const auto& q = pair.pmf_q();
    std::vector<size_t> order;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] > 0.0 || q[i] > 0.0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      // q[a]/p[a] > q[b]/p[b] without division.
      return q[a] * p[b] > q[b] * p[a];
    });
    std::vector<std::pair<double, double>> vertices = {{0.0, 1.0}};
    double alpha = 0.0, beta = 1.0;
    for (size_t i : order) {
      alpha = std::min(1.0, alpha + p[i]);
      beta = std::max(0.0, beta - q[i]);
      vertices.emplace_back(alpha, beta);
    }
    if (vertices.back().first >= 1.0 - 1e-12) {
      vertices.back() = {1.0, 0.0};
    }
    // Atoms with p = 0 stack at alpha = 0; keep the lowest beta there.
    return TradeoffCurve::FromVertices(std::move(vertices), grid_size);
  }
  if (!pair.monotone_lr()) {
    throw UnsupportedPairError(
        "likelihood ratio not monotone; use mc_estimate_tradeoff or supply a "
        "monotone pair");
  }
  const AlphaGrid& grid = StandardAlphaGrid(grid_size);
  std::vector<double> betas(grid.alphas.size());
  for (size_t i = 0; i < betas.size(); ++i) {
    double a = grid.alphas[i];
    if (a <= 0.0) {
      betas[i] = 1.0;
    } else if (a >= 1.0) {
      betas[i] = 0.0;
    } else {
      betas[i] = pair.CdfQ(pair.InverseSfP(a));
    }
  }
  return TradeoffCurve::PessimisticRepair(grid.alphas, std::move(betas));
}

void MechanismSpec::Validate() const {
  if (!(sensitivity >= 0.0)) throw DomainError("sensitivity must be >= 0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(sampling_prob >= 0.0 && sampling_prob <= 1.0)) {
    throw DomainError("sampling_prob must lie in [0, 1]");
  }
  if (steps < 1) throw DomainError("steps must be >= 1");
}

DominatingPair MechanismSpec::Pair() const {
  Validate();
  return DominatingPair::SubsampledGaussian(sampling_prob, sensitivity, sigma);
}

TradeoffCurve SubsampledGaussianTradeoff(const MechanismSpec& spec,
                                         int grid_size) {
  spec.Validate();
  if (spec.steps != 1) {
    throw DomainError("single-step curve requested with steps != 1; use "
                      "Compose for multiple steps");
  }
  return TradeoffFromPair(spec.Pair(), grid_size);
}

}  // namespace fdp
