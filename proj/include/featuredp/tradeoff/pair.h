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
#ifndef FEATUREDP_TRADEOFF_PAIR_H_
#define FEATUREDP_TRADEOFF_PAIR_H_

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "featuredp/tradeoff/curve.h"

namespace fdp {

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

// Two one-dimensional distributions P and Q. The trade-off curve T(P, Q)
// describes testing P (null) against Q. Continuous pairs with a monotone
// likelihood ratio are stored so that log(q/p) is non-decreasing in x;
// decreasing ratios are reflected on construction.
class DominatingPair {
 public:
  using Fn = std::function<double(double)>;

  // Optional closed forms for continuous pairs. Missing entries are
  // computed by quadrature and bisection.
  struct ContinuousSpec {
    Fn log_density_p;
    Fn log_density_q;
    Interval support;
    bool monotone_lr = false;
    // For monotone pairs: true if log(q/p) increases with x.
    bool lr_increasing = true;
    Fn cdf_p, sf_p, cdf_q, sf_q;
    // Inverse of sf_p on (0, 1).
    Fn inverse_sf_p;
    // Inverse of the log-likelihood ratio log(q/p) on its range.
    Fn inverse_llr;
    // Range of log(q/p) over the support.
    double llr_min = -std::numeric_limits<double>::infinity();
    double llr_max = std::numeric_limits<double>::infinity();
    // Identity used to merge repeated pairs in compositions; empty means
    // never merged.
    std::string key;
  };

  static DominatingPair Continuous(ContinuousSpec spec);

  // Finite pair. Points are labels only; tests threshold the likelihood
  // ratio. pmf_p and pmf_q must have the size of points.
  static DominatingPair Discrete(std::vector<double> points,
                                 std::vector<double> pmf_p,
                                 std::vector<double> pmf_q,
                                 std::string key = "");

  // (N(mean_p, sd), N(mean_q, sd)).
  static DominatingPair Gaussian(double mean_p, double mean_q, double sd);

  // (N(0, sigma), (1 - p) N(0, sigma) + p N(tau, sigma)).
  static DominatingPair SubsampledGaussian(double sampling_prob,
                                           double sensitivity, double sigma);

  bool is_discrete() const { return discrete_; }
  bool monotone_lr() const { return discrete_ || spec_.monotone_lr; }
  const std::string& key() const { return key_; }

  // The pair (Q, P).
  DominatingPair Swapped() const;

  // Throws DomainError unless both sides are normalized within 1e-9.
  void Validate() const;

  // Distribution functions of P and Q (continuous pairs).
  double CdfP(double x) const;
  double SfP(double x) const;
  double CdfQ(double x) const;
  double SfQ(double x) const;
  double Llr(double x) const;  // log q(x) - log p(x)
  // Smallest x with Llr(x) >= level (monotone continuous pairs). Returns
  // the support bounds when the level is outside the range.
  double InverseLlr(double level) const;
  // Inverse of SfP (monotone continuous pairs).
  double InverseSfP(double alpha) const;

  double LlrMin() const;
  double LlrMax() const;

  // Discrete accessors.
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& pmf_p() const { return pmf_p_; }
  const std::vector<double>& pmf_q() const { return pmf_q_; }

  // Continuous accessors.
  const ContinuousSpec& spec() const { return spec_; }

 private:
  DominatingPair() = default;

  bool discrete_ = false;
  bool validated_ = false;
  std::string key_;
  ContinuousSpec spec_;
  std::vector<double> points_, pmf_p_, pmf_q_;
};

// int (p - order * q)_+ : the hockey-stick divergence of P from Q at the
// given order. Throws DomainError for order < 0 or unnormalized pairs.
double HockeyStick(const DominatingPair& pair, double order);

// T(P, Q) on the standard grid (union the vertices for discrete pairs).
// Throws UnsupportedPairError when the pair is not monotone.
TradeoffCurve TradeoffFromPair(const DominatingPair& pair,
                               int grid_size = kDefaultGridSize);

struct MechanismSpec {
  double sensitivity = 1.0;
  double sigma = 1.0;
  double sampling_prob = 1.0;
  long steps = 1;

  // Throws DomainError on invalid fields.
  void Validate() const;
  DominatingPair Pair() const;
};

// T(N(0, sigma), (1 - p) N(0, sigma) + p N(tau, sigma)) for one step.
TradeoffCurve SubsampledGaussianTradeoff(const MechanismSpec& spec,
                                         int grid_size = kDefaultGridSize);

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_PAIR_H_
