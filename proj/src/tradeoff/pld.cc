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
#include "featuredp/tradeoff/pld.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <mutex>
#include <string>

#include "featuredp/common/errors.h"
#include "featuredp/kernels/convolution.h"

namespace fdp {
namespace {

constexpr int64_t kDirectConvolutionLimit = 256;

// FFTW planning is not thread-safe; execution is.
std::mutex& FftwPlannerMutex() {
  static std::mutex mu;
  return mu;
}

size_t FftSize(size_t n) {
  for (size_t m = std::max<size_t>(n, 1);; ++m) {
    size_t r = m;
    for (size_t f : {2, 3, 5, 7}) {
      while (r % f == 0) r /= f;
    }
    if (r == 1) return m;
  }
}

// Upper bound on the finite privacy losses of a pair, used to size the
// discretization lattice. Returns +inf when unbounded.
double FiniteLlrMax(const DominatingPair& pair) {
  if (!pair.is_discrete()) return pair.LlrMax();
  double m = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pair.points().size(); ++i) {
    if (pair.pmf_p()[i] > 0.0 && pair.pmf_q()[i] > 0.0) {
      m = std::max(m, std::log(pair.pmf_q()[i] / pair.pmf_p()[i]));
    }
  }
  return std::isinf(m) ? 0.0 : m;
}

double FiniteLlrMin(const DominatingPair& pair) {
  if (!pair.is_discrete()) return pair.LlrMin();
  double m = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < pair.points().size(); ++i) {
    if (pair.pmf_p()[i] > 0.0 && pair.pmf_q()[i] > 0.0) {
      m = std::min(m, std::log(pair.pmf_q()[i] / pair.pmf_p()[i]));
    }
  }
  return std::isinf(m) ? 0.0 : m;
}

// Q(L <= level) for the pair's privacy loss.
double LossCdfUnderQ(const DominatingPair& pair, double level) {
  if (pair.is_discrete()) {
    double total = 0.0;
    for (size_t i = 0; i < pair.points().size(); ++i) {
      double q = pair.pmf_q()[i], p = pair.pmf_p()[i];
      if (q > 0.0 && p > 0.0 && std::log(q / p) <= level) total += q;
    }
    return total;
  }
  if (pair.monotone_lr()) return pair.CdfQ(pair.InverseLlr(level));
  // Q(L <= l) <= e^l P(L <= l) <= e^l.
  return std::exp(level);
}

// log sum_j m_j e^{lambda l_j} with l_j = (min_index + j) h, evaluated by
// Horner's rule on the ratio e^{-|lambda| h} so nothing overflows.
double LogMgf(const std::vector<double>& m, int64_t min_index, double h,
              double lambda) {
  if (m.empty()) return -std::numeric_limits<double>::infinity();
  const int64_t last = min_index + static_cast<int64_t>(m.size()) - 1;
  const double t = std::exp(-std::abs(lambda) * h);
  double s = 0.0;
  if (lambda >= 0.0) {
    for (size_t j = 0; j < m.size(); ++j) s = s * t + m[j];
    return std::log(s) + lambda * static_cast<double>(last) * h;
  }
  for (size_t j = m.size(); j-- > 0;) s = s * t + m[j];
  return std::log(s) + lambda * static_cast<double>(min_index) * h;
}

// Chernoff window [lo, hi] (in privacy-loss units) outside of which the
// sum of independent draws from a and b has mass at most `tail` per side.
void ChernoffWindow(const std::vector<double>& a, int64_t a_min,
                    const std::vector<double>& b, int64_t b_min, double h,
                    double tail, double* lo, double* hi) {
  constexpr int kLambdas = 60;
  const double log_tail = std::log(tail);
  *hi = std::numeric_limits<double>::infinity();
  *lo = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kLambdas; ++k) {
    double lambda = std::pow(10.0, -3.0 + 6.0 * k / (kLambdas - 1));
    double up = LogMgf(a, a_min, h, lambda) + LogMgf(b, b_min, h, lambda);
    *hi = std::min(*hi, (up - log_tail) / lambda);
    double down = LogMgf(a, a_min, h, -lambda) + LogMgf(b, b_min, h, -lambda);
    *lo = std::max(*lo, -(down - log_tail) / lambda);
  }
}

}  // namespace

std::vector<double> ConvolveFft(const std::vector<double>& a,
                                const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a.size() + b.size() - 1;
  const size_t size = FftSize(n);
  const size_t half = size / 2 + 1;
  double* real = fftw_alloc_real(size);
  fftw_complex* fa = fftw_alloc_complex(half);
  fftw_complex* fb = fftw_alloc_complex(half);
  fftw_plan forward, backward;
  {
    std::lock_guard<std::mutex> lock(FftwPlannerMutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(size), real, fa,
                                   FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(size), fa, real,
                                    FFTW_ESTIMATE);
  }
  std::fill(real, real + size, 0.0);
  std::copy(a.begin(), a.end(), real);
  fftw_execute_dft_r2c(forward, real, fa);
  std::fill(real, real + size, 0.0);
  std::copy(b.begin(), b.end(), real);
  fftw_execute_dft_r2c(forward, real, fb);
  for (size_t k = 0; k < half; ++k) {
    std::complex<double> x(fa[k][0], fa[k][1]), y(fb[k][0], fb[k][1]);
    std::complex<double> z = x * y;
    fa[k][0] = z.real();
    fa[k][1] = z.imag();
  }
  fftw_execute_dft_c2r(backward, fa, real);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(size);
  for (size_t k = 0; k < n; ++k) out[k] = real[k] * scale;
  {
    std::lock_guard<std::mutex> lock(FftwPlannerMutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  fftw_free(real);
  fftw_free(fa);
  fftw_free(fb);
  return out;
}

PrivacyLossDistribution PrivacyLossDistribution::FromPair(
    const DominatingPair& pair, const PldOptions& options) {
  pair.Validate();
  const double h = options.bin_width;
  if (!(h > 0.0)) throw DomainError("bin_width must be positive");
  const DominatingPair swapped = pair.Swapped();
  // D(eps) = int (q - e^eps p)_+.
  auto d_of = [&](double eps) {
    return ::fdp::HockeyStick(swapped, std::exp(eps));
  };

  double eps_hi = FiniteLlrMax(pair);
  if (std::isinf(eps_hi)) {
    eps_hi = 1.0;
    while (d_of(eps_hi) > options.tail_mass) {
      eps_hi *= 2.0;
      if (eps_hi > 700.0) {
        throw AccuracyError("privacy loss tail does not decay below " +
                            std::to_string(options.tail_mass));
      }
    }
  }
  double eps_lo = FiniteLlrMin(pair);
  if (std::isinf(eps_lo)) {
    eps_lo = -1.0;
    while (LossCdfUnderQ(pair, eps_lo) > options.tail_mass) {
      eps_lo *= 2.0;
      if (eps_lo < -700.0) {
        throw AccuracyError("privacy loss lower tail does not decay");
      }
    }
  }
  eps_lo = std::min(eps_lo, eps_hi);
  const int64_t lo = static_cast<int64_t>(std::floor(eps_lo / h));
  const int64_t hi = static_cast<int64_t>(std::ceil(eps_hi / h));
  const int64_t n = hi - lo + 1;
  if (n > options.max_bins) {
    throw AccuracyError("privacy loss support needs " + std::to_string(n) +
                        " bins, above the limit of " +
                        std::to_string(options.max_bins));
  }

  std::vector<double> d(n), x(n);
  for (int64_t j = 0; j < n; ++j) {
    double l = static_cast<double>(lo + j) * h;
    x[j] = std::exp(l);
    d[j] = d_of(l);
  }
  // Slope of the interpolant in e^eps on each segment; the segment before
  // the first point joins (0, 1), the one after the last point is flat.
  const double gap = std::expm1(h);
  std::vector<double> slope(n + 1);
  slope[0] = (d[0] - 1.0) / x[0];
  for (int64_t j = 0; j + 1 < n; ++j) {
    slope[j + 1] = (d[j + 1] - d[j]) / (x[j] * gap);
  }
  slope[n] = 0.0;

  PrivacyLossDistribution pld;
  pld.options_ = options;
  pld.min_index_ = lo;
  pld.masses_.resize(n);
  for (int64_t j = 0; j < n; ++j) {
    // Mass of P at the atom is the slope increase; Q mass is e^l times it.
    double p_mass = std::max(0.0, slope[j + 1] - slope[j]);
    pld.masses_[j] = p_mass * x[j];
  }
  pld.infinity_mass_ = std::max(0.0, d[n - 1]);
  pld.Truncate(0.0);
  return pld;
}

PrivacyLossDistribution PrivacyLossDistribution::Identity(
    const PldOptions& options) {
  PrivacyLossDistribution pld;
  pld.options_ = options;
  pld.min_index_ = 0;
  pld.masses_ = {1.0};
  return pld;
}

void PrivacyLossDistribution::Truncate(double upper_cut) {
  size_t begin = 0, end = masses_.size();
  while (begin < end && masses_[begin] <= 0.0) ++begin;
  while (end > begin && masses_[end - 1] <= 0.0) --end;
  if (begin == end) {
    masses_.clear();
    min_index_ = 0;
    return;
  }
  // Lower tail moves up into the first kept bin, which only increases
  // privacy losses.
  double cut = 0.0;
  while (begin + 1 < end && cut + masses_[begin] <= options_.tail_mass) {
    cut += masses_[begin++];
  }
  masses_[begin] += cut;
  // Upper tail moves to the infinity atom.
  cut = 0.0;
  while (end - 1 > begin && cut + masses_[end - 1] <= upper_cut) {
    cut += masses_[--end];
  }
  infinity_mass_ += cut;
  truncated_mass_ += cut;
  if (truncated_mass_ > options_.truncation_budget) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "truncated mass %.3g exceeds the budget %.3g",
                  truncated_mass_, options_.truncation_budget);
    throw AccuracyError(buf);
  }
  min_index_ += static_cast<int64_t>(begin);
  masses_ = std::vector<double>(masses_.begin() + begin,
                                masses_.begin() + end);
}

PrivacyLossDistribution PrivacyLossDistribution::Compose(
    const PrivacyLossDistribution& other) const {
  return ComposeWithCut(other, options_.tail_mass);
}

PrivacyLossDistribution PrivacyLossDistribution::ComposeWithCut(
    const PrivacyLossDistribution& other, double upper_cut) const {
  if (std::abs(options_.bin_width - other.options_.bin_width) >
      1e-12 * options_.bin_width) {
    throw DomainError("cannot compose distributions with different bins");
  }
  PrivacyLossDistribution out;
  out.options_ = options_;
  out.truncated_mass_ = truncated_mass_ + other.truncated_mass_;
  out.infinity_mass_ =
      1.0 - (1.0 - infinity_mass_) * (1.0 - other.infinity_mass_);
  if (masses_.empty() || other.masses_.empty()) {
    out.infinity_mass_ = 1.0;
    return out;
  }
  const int64_t bins = static_cast<int64_t>(masses_.size() +
                                            other.masses_.size() - 1);
  if (bins > options_.max_bins) {
    throw AccuracyError("composed support needs " + std::to_string(bins) +
                        " bins, above the limit of " +
                        std::to_string(options_.max_bins));
  }
  out.min_index_ = min_index_ + other.min_index_;
  const int64_t smaller = static_cast<int64_t>(
      std::min(masses_.size(), other.masses_.size()));
  if (smaller <= kDirectConvolutionLimit) {
    out.masses_ = kernels::ConvolveDirect(masses_, other.masses_);
  } else {
    out.masses_ = ConvolveFft(masses_, other.masses_);
  }
  for (double& m : out.masses_) m = std::max(m, 0.0);

  // Clip to a Chernoff window computed from the inputs. Entries outside
  // it are below the transform's round-off, so the observed values are
  // replaced by the bound: lower-tail mass moves up into the first kept
  // bin and the upper tail is charged to the infinity atom at its bound.
  if (upper_cut > 0.0) {
    double lo, hi;
    ChernoffWindow(masses_, min_index_, other.masses_, other.min_index_,
                   options_.bin_width, upper_cut, &lo, &hi);
    const int64_t n = static_cast<int64_t>(out.masses_.size());
    int64_t first = std::clamp<int64_t>(
        static_cast<int64_t>(std::floor(lo / options_.bin_width)) -
            out.min_index_,
        0, n - 1);
    int64_t last = std::clamp<int64_t>(
        static_cast<int64_t>(std::ceil(hi / options_.bin_width)) -
            out.min_index_,
        first, n - 1);
    double below = 0.0;
    for (int64_t j = 0; j < first; ++j) below += out.masses_[j];
    if (last < n - 1) {
      out.infinity_mass_ += upper_cut;
      out.truncated_mass_ += upper_cut;
    }
    std::vector<double> kept(out.masses_.begin() + first,
                             out.masses_.begin() + last + 1);
    kept[0] += below;
    out.masses_ = std::move(kept);
    out.min_index_ += first;
  }
  out.Truncate(0.0);
  return out;
}

PrivacyLossDistribution PrivacyLossDistribution::SelfCompose(
    long times) const {
  if (times < 1) throw DomainError("composition count must be >= 1");
  // Mass cut at squaring level k is replicated about times / 2^k times, so
  // the per-step cut is scaled to keep the total within half the budget.
  const double cut = std::min(
      options_.tail_mass,
      options_.truncation_budget / (4.0 * static_cast<double>(times)));
  PrivacyLossDistribution result = Identity(options_);
  PrivacyLossDistribution base = *this;
  bool have_result = false;
  while (true) {
    if (times & 1) {
      result = have_result ? result.ComposeWithCut(base, cut) : base;
      have_result = true;
    }
    times >>= 1;
    if (times == 0) break;
    base = base.ComposeWithCut(base, cut);
  }
  return result;
}

double PrivacyLossDistribution::HockeyStick(double epsilon) const {
  double total = infinity_mass_;
  const double h = options_.bin_width;
  for (size_t j = 0; j < masses_.size(); ++j) {
    double l = static_cast<double>(min_index_ + static_cast<int64_t>(j)) * h;
    if (l <= epsilon) continue;
    total += masses_[j] * -std::expm1(epsilon - l);
  }
  return std::min(total, 1.0);
}

double PrivacyLossDistribution::EpsilonForDelta(double delta) const {
  if (infinity_mass_ > delta) return kInfiniteEpsilon;
  if (HockeyStick(0.0) <= delta) return 0.0;
  double lo = 0.0;
  double hi = static_cast<double>(min_index_ +
                                  static_cast<int64_t>(masses_.size())) *
              options_.bin_width;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    double mid = 0.5 * (lo + hi);
    if (HockeyStick(mid) <= delta) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

TradeoffCurve PrivacyLossDistribution::ToCurve(int grid_size) const {
  // Reject atoms in decreasing order of privacy loss.
  std::vector<std::pair<double, double>> vertices;
  vertices.reserve(masses_.size() + 2);
  double alpha = 0.0;
  double q_rejected = infinity_mass_;
  vertices.emplace_back(0.0, std::max(0.0, 1.0 - q_rejected));
  const double h = options_.bin_width;
  for (size_t k = masses_.size(); k-- > 0;) {
    if (masses_[k] <= 0.0) continue;
    double l = static_cast<double>(min_index_ + static_cast<int64_t>(k)) * h;
    alpha += masses_[k] * std::exp(-l);
    q_rejected += masses_[k];
    vertices.emplace_back(std::min(alpha, 1.0),
                          std::max(0.0, 1.0 - q_rejected));
  }
  if (vertices.back().first >= 1.0) vertices.back().second = 0.0;
  return TradeoffCurve::FromVertices(std::move(vertices), grid_size);
}

TradeoffCurve Compose(const std::vector<DominatingPair>& pairs, int grid_size,
                      const PldOptions& options) {
  if (pairs.empty()) throw DomainError("compose needs at least one pair");
  // Group pairs by key so identical steps use repeated squaring.
  std::vector<std::pair<const DominatingPair*, long>> groups;
  std::map<std::string, size_t> by_key;
  for (const DominatingPair& pair : pairs) {
    if (!pair.key().empty()) {
      auto it = by_key.find(pair.key());
      if (it != by_key.end()) {
        ++groups[it->second].second;
        continue;
      }
      by_key[pair.key()] = groups.size();
    }
    groups.emplace_back(&pair, 1);
  }
  PrivacyLossDistribution total = PrivacyLossDistribution::Identity(options);
  for (const auto& [pair, count] : groups) {
    total = total.Compose(
        PrivacyLossDistribution::FromPair(*pair, options).SelfCompose(count));
  }
  return total.ToCurve(grid_size);
}

}  // namespace fdp
