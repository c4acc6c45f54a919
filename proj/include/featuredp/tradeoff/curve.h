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
#ifndef FEATUREDP_TRADEOFF_CURVE_H_
#define FEATUREDP_TRADEOFF_CURVE_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fdp {

// Sentinel for an unbounded privacy loss. Serialized as the string "inf".
inline constexpr double kInfiniteEpsilon =
    std::numeric_limits<double>::infinity();
inline bool IsInfiniteEpsilon(double eps) { return eps == kInfiniteEpsilon; }

inline constexpr int kDefaultGridSize = 4096;
inline constexpr int kCurveSchemaVersion = 1;
inline constexpr int kGridVersion = 1;

// Tolerances used by TradeoffCurve::Validate.
inline constexpr double kCurveTolerance = 1e-12;

struct PrivacyParams {
  double epsilon = 0.0;
  double delta = 0.0;

  // Throws DomainError unless epsilon >= 0 and delta in [0, 1].
  void Validate() const;
};

// Type-I error grid uniform in z = Phi^{-1}(1 - alpha) on [-8, 10], plus
// the endpoints 0 and 1. `zs[i]` is the z-value of alphas[i] (+inf at 0,
// -inf at 1). The grid is denser near alpha = 0.
struct AlphaGrid {
  std::vector<double> alphas;
  std::vector<double> zs;
};
const AlphaGrid& StandardAlphaGrid(int grid_size = kDefaultGridSize);

// A discretized trade-off function f: [0,1] -> [0,1], represented by its
// values on a strictly increasing grid of type-I errors and interpolated
// piecewise-linearly in between. Immutable once constructed.
class TradeoffCurve {
 public:
  // Builds a curve from grid values; throws DomainError when any invariant
  // fails (see Validate).
  TradeoffCurve(std::vector<double> alphas, std::vector<double> betas);

  // The largest valid curve lying below the given samples: values are
  // clipped to [0, 1 - alpha], made non-increasing and replaced by their
  // lower convex hull. Grid must be strictly increasing from 0 to 1.
  static TradeoffCurve PessimisticRepair(std::vector<double> alphas,
                                         std::vector<double> betas);

  // Curve through the given (alpha, beta) vertices, sampled on the union of
  // the standard grid and the vertex abscissae. Vertices need not include
  // the endpoints; (1, 0) is appended when missing.
  static TradeoffCurve FromVertices(
      std::vector<std::pair<double, double>> vertices,
      int grid_size = kDefaultGridSize);

  // f(alpha) = 1 - alpha.
  static TradeoffCurve Identity(int grid_size = kDefaultGridSize);

  const std::vector<double>& alphas() const { return alphas_; }
  const std::vector<double>& betas() const { return betas_; }
  int grid_size() const { return static_cast<int>(alphas_.size()); }

  // Piecewise-linear evaluation; alpha is clamped to [0, 1].
  double operator()(double alpha) const;

  // The generalized inverse f^{-1}(b) = inf{a : f(a) <= b}, which for a
  // symmetric-by-relabeling pair equals T(Q, P).
  TradeoffCurve Inverse() const;

  // max |f - g| over the union of both grids.
  double SupDistance(const TradeoffCurve& other) const;

  // True when f(a) >= g(a) - tol at every point of both grids.
  bool Dominates(const TradeoffCurve& other, double tol = 0.0) const;

  nlohmann::json ToJson() const;
  static TradeoffCurve FromJson(const nlohmann::json& doc);

 private:
  TradeoffCurve() = default;
  void Validate() const;

  std::vector<double> alphas_;
  std::vector<double> betas_;
};

// conv(min(f, g)), sampled on the union of both grids.
TradeoffCurve Symmetrize(const TradeoffCurve& f, const TradeoffCurve& g);

// f(alpha) = Phi(Phi^{-1}(1 - alpha) - mu). Throws DomainError if mu < 0.
TradeoffCurve GaussianTradeoff(double mu, int grid_size = kDefaultGridSize);

// max(0, 1 - delta - e^eps x, e^{-eps}(1 - delta - x)), with its kinks
// inserted into the grid.
TradeoffCurve LinearCurve(const PrivacyParams& params,
                          int grid_size = kDefaultGridSize);

// sup over alpha in (0, 1] of log((1 - delta - f(alpha)) / alpha), clamped
// at 0. Returns kInfiniteEpsilon when f(0) < 1 - delta. Throws DomainError
// unless 0 <= delta < 1.
double ToEpsilon(const TradeoffCurve& curve, double delta);

// Smallest delta such that the curve is (epsilon, delta)-DP:
// sup_alpha (1 - f(alpha) - e^eps alpha).
double ToDelta(const TradeoffCurve& curve, double epsilon);

// JSON helpers for epsilons that may be the infinite sentinel.
nlohmann::json EpsilonToJson(double epsilon);
double EpsilonFromJson(const nlohmann::json& value);

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_CURVE_H_
