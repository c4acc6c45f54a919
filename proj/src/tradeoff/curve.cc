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
#include "featuredp/tradeoff/curve.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "featuredp/common/errors.h"
#include "featuredp/tradeoff/normal.h"

namespace fdp {
namespace {

constexpr double kGridZMax = 10.0;
constexpr double kGridZMin = -8.0;

// Evaluates the piecewise-linear function through (xs, ys) at x.
double Interpolate(const std::vector<double>& xs, const std::vector<double>& ys,
                   double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  size_t hi = static_cast<size_t>(it - xs.begin());
  size_t lo = hi - 1;
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

std::vector<double> UnionGrid(const std::vector<double>& a,
                              const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Lower convex hull of the points, evaluated back at every abscissa.
std::vector<double> LowerHull(const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  std::vector<size_t> hull;
  hull.reserve(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      size_t a = hull[hull.size() - 2];
      size_t b = hull[hull.size() - 1];
      // Remove b if it lies on or above the chord from a to i.
      double cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) -
                     (ys[b] - ys[a]) * (xs[i] - xs[a]);
      if (cross <= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<double> out(xs.size());
  size_t seg = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    while (seg + 1 < hull.size() && xs[hull[seg + 1]] < xs[i]) ++seg;
    if (seg + 1 >= hull.size() || xs[i] == xs[hull[seg]]) {
      out[i] = ys[hull[seg]];
      continue;
    }
    size_t a = hull[seg];
    size_t b = hull[seg + 1];
    double t = (xs[i] - xs[a]) / (xs[b] - xs[a]);
    out[i] = std::min(ys[i], ys[a] + t * (ys[b] - ys[a]));
  }
  return out;
}

}  // namespace

void PrivacyParams::Validate() const {
  if (!(epsilon >= 0.0)) {
    throw DomainError("epsilon must be non-negative, got " +
                      std::to_string(epsilon));
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw DomainError("delta must lie in [0, 1], got " + std::to_string(delta));
  }
}

const AlphaGrid& StandardAlphaGrid(int grid_size) {
  if (grid_size < 3) {
    throw DomainError("grid_size must be at least 3, got " +
                      std::to_string(grid_size));
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<AlphaGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[grid_size];
  if (slot != nullptr) return *slot;

  auto grid = std::make_unique<AlphaGrid>();
  grid->alphas.push_back(0.0);
  grid->zs.push_back(std::numeric_limits<double>::infinity());
  int interior = grid_size - 2;
  for (int i = 0; i < interior; ++i) {
    double z = interior == 1 ? 0.0
                             : kGridZMax - (kGridZMax - kGridZMin) * i /
                                               (interior - 1);
    double alpha = NormalSf(z);
    // Points that collapse onto their neighbour in double precision are
    // dropped, which only happens next to alpha = 1.
    if (alpha <= grid->alphas.back() || alpha >= 1.0) continue;
    grid->alphas.push_back(alpha);
    grid->zs.push_back(z);
  }
  grid->alphas.push_back(1.0);
  grid->zs.push_back(-std::numeric_limits<double>::infinity());
  slot = std::move(grid);
  return *slot;
}

TradeoffCurve::TradeoffCurve(std::vector<double> alphas,
                             std::vector<double> betas)
    : alphas_(std::move(alphas)), betas_(std::move(betas)) {
  Validate();
}

void TradeoffCurve::Validate() const {
  const double tol = kCurveTolerance;
  if (alphas_.size() != betas_.size()) {
    throw DomainError("alphas and betas differ in length");
  }
  if (alphas_.size() < 2) throw DomainError("curve needs at least 2 points");
  if (alphas_.front() != 0.0 || alphas_.back() != 1.0) {
    throw DomainError("curve grid must start at 0 and end at 1");
  }
  for (size_t i = 0; i < alphas_.size(); ++i) {
    std::string at = " at grid index " + std::to_string(i);
    if (i > 0 && !(alphas_[i] > alphas_[i - 1])) {
      throw DomainError("alphas not strictly increasing" + at);
    }
    if (!(betas_[i] >= -tol && betas_[i] <= 1.0 + tol)) {
      throw DomainError("beta outside [0, 1]" + at);
    }
    if (betas_[i] > 1.0 - alphas_[i] + tol) {
      throw DomainError("curve exceeds 1 - alpha" + at);
    }
    if (i > 0 && betas_[i] > betas_[i - 1] + tol) {
      throw DomainError("curve increasing" + at);
    }
    if (i > 0 && i + 1 < alphas_.size()) {
      double t = (alphas_[i] - alphas_[i - 1]) /
                 (alphas_[i + 1] - alphas_[i - 1]);
      double chord = betas_[i - 1] + t * (betas_[i + 1] - betas_[i - 1]);
      if (betas_[i] > chord + tol) throw DomainError("curve not convex" + at);
    }
  }
  if (betas_.back() > tol) throw DomainError("f(1) must be 0");
}

TradeoffCurve TradeoffCurve::PessimisticRepair(std::vector<double> alphas,
                                               std::vector<double> betas) {
  if (alphas.size() != betas.size() || alphas.size() < 2) {
    throw DomainError("repair needs matching grids of size >= 2");
  }
  if (alphas.front() != 0.0 || alphas.back() != 1.0) {
    throw DomainError("repair grid must start at 0 and end at 1");
  }
  for (size_t i = 0; i < betas.size(); ++i) {
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw DomainError("repair grid not strictly increasing at index " +
                        std::to_string(i));
    }
    double b = std::isnan(betas[i]) ? 0.0 : betas[i];
    b = std::clamp(b, 0.0, 1.0 - alphas[i]);
    if (i > 0) b = std::min(b, betas[i - 1]);
    betas[i] = b;
  }
  betas.back() = 0.0;
  std::vector<double> hull = LowerHull(alphas, betas);
  for (size_t i = 0; i < hull.size(); ++i) {
    hull[i] = std::clamp(hull[i], 0.0, 1.0 - alphas[i]);
  }
  TradeoffCurve curve;
  curve.alphas_ = std::move(alphas);
  curve.betas_ = std::move(hull);
  curve.Validate();
  return curve;
}

TradeoffCurve TradeoffCurve::FromVertices(
    std::vector<std::pair<double, double>> vertices, int grid_size) {
  if (vertices.empty()) throw DomainError("no vertices");
  std::sort(vertices.begin(), vertices.end());
  if (vertices.front().first != 0.0) {
    throw DomainError("first vertex must have alpha = 0");
  }
  if (vertices.back().first < 1.0) vertices.emplace_back(1.0, 0.0);
  std::vector<double> vx, vy;
  for (const auto& [x, y] : vertices) {
    if (x < 0.0 || x > 1.0) throw DomainError("vertex alpha outside [0, 1]");
    if (!vx.empty() && x == vx.back()) {
      // Keep the lower value at a repeated abscissa.
      vy.back() = std::min(vy.back(), y);
      continue;
    }
    vx.push_back(x);
    vy.push_back(y);
  }
  std::vector<double> grid = UnionGrid(StandardAlphaGrid(grid_size).alphas, vx);
  std::vector<double> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    values[i] = Interpolate(vx, vy, grid[i]);
  }
  return PessimisticRepair(std::move(grid), std::move(values));
}

TradeoffCurve TradeoffCurve::Identity(int grid_size) {
  const AlphaGrid& grid = StandardAlphaGrid(grid_size);
  std::vector<double> betas(grid.alphas.size());
  for (size_t i = 0; i < betas.size(); ++i) betas[i] = 1.0 - grid.alphas[i];
  return TradeoffCurve(grid.alphas, std::move(betas));
}

double TradeoffCurve::operator()(double alpha) const {
  return Interpolate(alphas_, betas_, std::clamp(alpha, 0.0, 1.0));
}

TradeoffCurve TradeoffCurve::Inverse() const {
  // Reflect the graph across the diagonal. Where f is flat at level b the
  // inverse takes the smallest alpha.
  std::vector<double> xs, ys;
  xs.reserve(alphas_.size() + 1);
  ys.reserve(alphas_.size() + 1);
  for (size_t k = alphas_.size(); k-- > 0;) {
    double b = std::clamp(betas_[k], 0.0, 1.0);
    if (!xs.empty() && b <= xs.back()) {
      ys.back() = std::min(ys.back(), alphas_[k]);
      continue;
    }
    xs.push_back(b);
    ys.push_back(alphas_[k]);
  }
  xs.front() = 0.0;
  if (xs.back() < 1.0) {
    xs.push_back(1.0);
    ys.push_back(0.0);
  } else {
    xs.back() = 1.0;
  }
  return PessimisticRepair(std::move(xs), std::move(ys));
}

double TradeoffCurve::SupDistance(const TradeoffCurve& other) const {
  double worst = 0.0;
  for (double a : UnionGrid(alphas_, other.alphas_)) {
    worst = std::max(worst, std::abs((*this)(a) - other(a)));
  }
  return worst;
}

bool TradeoffCurve::Dominates(const TradeoffCurve& other, double tol) const {
  for (double a : UnionGrid(alphas_, other.alphas_)) {
    if ((*this)(a) < other(a) - tol) return false;
  }
  return true;
}

nlohmann::json TradeoffCurve::ToJson() const {
  return nlohmann::json{{"schema_version", kCurveSchemaVersion},
                        {"grid_version", kGridVersion},
                        {"grid_size", grid_size()},
                        {"alphas", alphas_},
                        {"betas", betas_}};
}

TradeoffCurve TradeoffCurve::FromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("alphas") || !doc.contains("betas")) {
    throw SchemaError("curve document needs alphas and betas");
  }
  if (doc.value("grid_version", kGridVersion) != kGridVersion) {
    throw SchemaError("unsupported curve grid_version");
  }
  return TradeoffCurve(doc.at("alphas").get<std::vector<double>>(),
                       doc.at("betas").get<std::vector<double>>());
}

TradeoffCurve Symmetrize(const TradeoffCurve& f, const TradeoffCurve& g) {
  std::vector<double> grid = UnionGrid(f.alphas(), g.alphas());
  std::vector<double> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    values[i] = std::min(f(grid[i]), g(grid[i]));
  }
  return TradeoffCurve::PessimisticRepair(std::move(grid), std::move(values));
}

TradeoffCurve GaussianTradeoff(double mu, int grid_size) {
  if (!(mu >= 0.0)) {
    throw DomainError("mu must be non-negative, got " + std::to_string(mu));
  }
  const AlphaGrid& grid = StandardAlphaGrid(grid_size);
  std::vector<double> betas(grid.alphas.size());
  for (size_t i = 0; i < betas.size(); ++i) {
    betas[i] = std::min(NormalCdf(grid.zs[i] - mu), 1.0 - grid.alphas[i]);
  }
  betas.front() = 1.0;
  betas.back() = 0.0;
  return TradeoffCurve(grid.alphas, std::move(betas));
}

TradeoffCurve LinearCurve(const PrivacyParams& params, int grid_size) {
  params.Validate();
  double top = 1.0 - params.delta;
  if (std::isinf(params.epsilon)) {
    return TradeoffCurve::FromVertices({{0.0, 0.0}}, grid_size);
  }
  double e = std::exp(params.epsilon);
  double kink = top / (1.0 + e);
  std::vector<std::pair<double, double>> vertices = {
      {0.0, top}, {kink, std::exp(-params.epsilon) * (top - kink)},
      {top, 0.0}};
  if (kink <= 0.0) vertices = {{0.0, top}, {top, 0.0}};
  return TradeoffCurve::FromVertices(std::move(vertices), grid_size);
}

// Numerators 1 - delta - beta below this carry a relative rounding error
// above 1e-7 and are skipped.
constexpr double kCancellationFloor = 1e-9;

double ToEpsilon(const TradeoffCurve& curve, double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in [0, 1), got " + std::to_string(delta));
  }
  const auto& alphas = curve.alphas();
  const auto& betas = curve.betas();
  if (betas.front() < 1.0 - delta - 1e-14) return kInfiniteEpsilon;
  double eps = 0.0;
  // On each linear piece the ratio is monotone, so the supremum over the
  // interpolant is attained at grid points.
  for (size_t i = 1; i < alphas.size(); ++i) {
    double numerator = 1.0 - delta - betas[i];
    if (numerator < kCancellationFloor) continue;
    eps = std::max(eps, std::log(numerator / alphas[i]));
  }
  return eps;
}

double ToDelta(const TradeoffCurve& curve, double epsilon) {
  if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
  if (IsInfiniteEpsilon(epsilon)) return 0.0;
  double e = std::exp(epsilon);
  double delta = 0.0;
  for (size_t i = 0; i < curve.alphas().size(); ++i) {
    delta = std::max(delta, 1.0 - curve.betas()[i] - e * curve.alphas()[i]);
  }
  return std::min(delta, 1.0);
}

nlohmann::json EpsilonToJson(double epsilon) {
  if (IsInfiniteEpsilon(epsilon)) return "inf";
  return epsilon;
}

double EpsilonFromJson(const nlohmann::json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return kInfiniteEpsilon;
    throw SchemaError("epsilon string must be \"inf\"");
  }
  return value.get<double>();
}

}  // namespace fdp
