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
#ifndef FEATUREDP_TRADEOFF_PLD_H_
#define FEATUREDP_TRADEOFF_PLD_H_

#include <cstdint>
#include <vector>

#include "featuredp/tradeoff/curve.h"
#include "featuredp/tradeoff/pair.h"

namespace fdp {

struct PldOptions {
  // Width of the privacy-loss bins.
  double bin_width = 1e-3;
  // Mass each discretization or truncation step may cut from one tail.
  double tail_mass = 1e-15;
  // Total mass all truncations together may move to the infinity atom.
  double truncation_budget = 1e-12;
  int64_t max_bins = int64_t{1} << 24;
};

// Discretized distribution of the privacy loss L = log(q/p)(X), X ~ Q, of
// a pair (P, Q), on the lattice {k * bin_width}, plus an atom at +inf.
//
// The discretization interpolates the hockey-stick curve
// D(eps) = int (q - e^eps p)_+ linearly in e^eps between lattice points.
// D is convex in e^eps, so the discrete distribution dominates the pair:
// every D value and every epsilon derived from it is an upper bound.
class PrivacyLossDistribution {
 public:
  static PrivacyLossDistribution FromPair(const DominatingPair& pair,
                                          const PldOptions& options = {});
  // The distribution of a pair of identical distributions.
  static PrivacyLossDistribution Identity(const PldOptions& options = {});

  // Distribution of the product pair. Throws DomainError on mismatched bin
  // widths and AccuracyError when the support exceeds max_bins or the
  // truncation budget is exhausted.
  PrivacyLossDistribution Compose(const PrivacyLossDistribution& other) const;
  // times-fold composition by repeated squaring.
  PrivacyLossDistribution SelfCompose(long times) const;

  // D(eps) of the discrete distribution.
  double HockeyStick(double epsilon) const;
  // Smallest epsilon >= 0 with HockeyStick(epsilon) <= delta.
  double EpsilonForDelta(double delta) const;

  // T(P, Q) of the discrete pair, sampled on the standard grid together
  // with all of its vertices.
  TradeoffCurve ToCurve(int grid_size = kDefaultGridSize) const;

  double bin_width() const { return options_.bin_width; }
  int64_t min_index() const { return min_index_; }
  const std::vector<double>& masses() const { return masses_; }
  double infinity_mass() const { return infinity_mass_; }
  // Mass moved into the infinity atom by truncation so far.
  double truncated_mass() const { return truncated_mass_; }

 private:
  PrivacyLossDistribution() = default;
  // Drops zero bins, then cuts up to tail_mass from the lower tail and up
  // to upper_cut from the upper tail.
  void Truncate(double upper_cut);
  PrivacyLossDistribution ComposeWithCut(const PrivacyLossDistribution& other,
                                         double upper_cut) const;

  PldOptions options_;
  int64_t min_index_ = 0;
  std::vector<double> masses_;
  double infinity_mass_ = 0.0;
  double truncated_mass_ = 0.0;
};

// Composition of the given pairs (each directional, T(P_i, Q_i)) as the
// trade-off curve of the product distributions. Pairs sharing a non-empty
// key are composed by repeated squaring. Throws DomainError on an empty
// list.
TradeoffCurve Compose(const std::vector<DominatingPair>& pairs,
                      int grid_size = kDefaultGridSize,
                      const PldOptions& options = {});

// Linear convolution via FFTW; exposed for tests.
std::vector<double> ConvolveFft(const std::vector<double>& a,
                                const std::vector<double>& b);

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_PLD_H_
