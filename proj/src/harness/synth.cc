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
#include "featuredp/harness/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"
#include "featuredp/sgd/splits.h"

namespace fdp {
namespace {

DatasetManifest MakeManifest(int dims, int num_public, bool label_public,
                             int num_classes, double norm_bound) {
  DatasetManifest m;
  for (int j = 0; j < dims; ++j) {
    m.columns.push_back({"x" + std::to_string(j), ColumnKind::kNumeric,
                         j < num_public ? ColumnRole::kPublic
                                        : ColumnRole::kPrivate});
  }
  m.columns.push_back({"label", ColumnKind::kLabel,
                       label_public ? ColumnRole::kPublic : ColumnRole::kPrivate});
  m.norm_bound = norm_bound;
  m.num_classes = num_classes;
  return m;
}

double Gumbel(std::mt19937_64& rng) {
  double u = UniformDouble(rng);
  return -std::log(-std::log(std::max(u, 1e-300)));
}

void ScaleToUnitBall(std::vector<double>* x) {
  double n = 0.0;
  for (double v : *x) n += v * v;
  n = std::sqrt(n);
  if (n > 1.0) {
    for (double& v : *x) v /= n;
  }
}

SynthResult PurchaseLike(const SynthOptions& o, int num_public) {
  const int d = o.dims;
  const int k = o.num_classes;
  if (k < 2) throw DomainError("purchase-like needs at least two classes");
  if (!(o.density > 0.0 && o.density <= 1.0)) {
    throw DomainError("density must lie in (0, 1]");
  }
  std::mt19937_64 rng = MakeEngine(o.seed, {StreamId("synth/purchase/w")});
  std::normal_distribution<double> normal(0.0, 1.0);
  SynthResult out;
  out.planted.resize(static_cast<size_t>(d) * k);
  for (int j = 0; j < d; ++j) {
    double scale = j < num_public ? 1.0 : o.private_signal;
    for (int c = 0; c < k; ++c) out.planted[j * k + c] = scale * normal(rng);
  }
  std::mt19937_64 xr = MakeEngine(o.seed, {StreamId("synth/purchase/x")});
  std::bernoulli_distribution bit(o.density);
  out.dataset.manifest = MakeManifest(d, num_public, true, k, 1.0);
  out.dataset.data.num_classes = k;
  // Logits are computed on the raw bits; the noise scale is relative to
  // their typical spread.
  const double spread = std::sqrt(o.density * d);
  for (int64_t i = 0; i < o.size; ++i) {
    Example x;
    x.features.assign(d, 0.0);
    int nnz = 0;
    for (int j = 0; j < d; ++j) {
      if (bit(xr)) {
        x.features[j] = 1.0;
        ++nnz;
      }
    }
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      double v = 0.0;
      for (int j = 0; j < d; ++j) v += x.features[j] * out.planted[j * k + c];
      v += o.label_noise * spread * Gumbel(xr);
      if (v > best_v) {
        best_v = v;
        best = c;
      }
    }
    x.label = best;
    if (nnz > 0) {
      double s = 1.0 / std::sqrt(static_cast<double>(nnz));
      for (double& v : x.features) v *= s;
    }
    out.dataset.data.examples.push_back(std::move(x));
  }
  out.default_split = "padding";
  return out;
}

SynthResult CriteoLike(const SynthOptions& o, int num_public) {
  const int d = o.dims;
  std::mt19937_64 rng = MakeEngine(o.seed, {StreamId("synth/criteo/w")});
  std::normal_distribution<double> normal(0.0, 1.0);
  SynthResult out;
  out.planted.resize(d);
  for (double& w : out.planted) w = normal(rng);
  std::mt19937_64 xr = MakeEngine(o.seed, {StreamId("synth/criteo/x")});
  std::lognormal_distribution<double> heavy(0.0, 1.0);
  out.dataset.manifest = MakeManifest(d, num_public, true, 2, 1.0);
  out.dataset.data.num_classes = 2;
  const double logit_scale = 4.0;
  // Low base rate, as in click data.
  const double bias = -1.0;
  for (int64_t i = 0; i < o.size; ++i) {
    Example x;
    x.features.resize(d);
    for (int j = 0; j < d; ++j) {
      double v = std::log1p(heavy(xr)) - 0.6;
      x.features[j] = v / std::sqrt(static_cast<double>(d));
    }
    ScaleToUnitBall(&x.features);
    double z = bias;
    for (int j = 0; j < d; ++j) z += logit_scale * out.planted[j] * x.features[j];
    z += o.label_noise * (Gumbel(xr) - Gumbel(xr));
    x.label = z > 0.0 ? 1 : 0;
    out.dataset.data.examples.push_back(std::move(x));
  }
  out.default_split = "masking";
  return out;
}

SynthResult LabelDpGaussian(const SynthOptions& o) {
  const int d = o.dims;
  if (!(o.margin >= 0.0)) throw DomainError("margin must be non-negative");
  std::mt19937_64 rng = MakeEngine(o.seed, {StreamId("synth/labeldp/w")});
  std::normal_distribution<double> normal(0.0, 1.0);
  SynthResult out;
  out.planted.resize(d);
  double n = 0.0;
  for (double& w : out.planted) {
    w = normal(rng);
    n += w * w;
  }
  n = std::sqrt(n);
  for (double& w : out.planted) w /= n;
  std::mt19937_64 xr = MakeEngine(o.seed, {StreamId("synth/labeldp/x")});
  out.dataset.manifest = MakeManifest(d, d, false, 2, 1.0);
  out.dataset.data.num_classes = 2;
  // Points are drawn at scale sqrt(d) with their component along the
  // separator pushed beyond the margin, then shrunk into the unit ball.
  const double shrink = 1.0 / (std::sqrt(static_cast<double>(d)) + o.margin + 6.0);
  for (int64_t i = 0; i < o.size; ++i) {
    Example x;
    x.features.resize(d);
    double along = 0.0;
    for (int j = 0; j < d; ++j) {
      x.features[j] = normal(xr);
      along += x.features[j] * out.planted[j];
    }
    int label = UniformDouble(xr) < 0.5 ? 0 : 1;
    double target = (label == 1 ? 1.0 : -1.0) * (o.margin + std::abs(normal(xr)));
    for (int j = 0; j < d; ++j) {
      x.features[j] = (x.features[j] + (target - along) * out.planted[j]) * shrink;
    }
    ScaleToUnitBall(&x.features);
    x.label = label;
    out.dataset.data.examples.push_back(std::move(x));
  }
  out.default_split = "label-dp";
  return out;
}

SynthResult Quadratic(const SynthOptions& o, int num_public) {
  const int d = o.dims;
  if (!(o.lambda > 0.0)) throw DomainError("lambda must be positive");
  std::mt19937_64 xr = MakeEngine(o.seed, {StreamId("synth/quadratic/z")});
  std::normal_distribution<double> normal(0.0, 1.0);
  SynthResult out;
  out.dataset.manifest = MakeManifest(d, num_public, true, 1, 1.0);
  out.dataset.data.num_classes = 1;
  out.lambda = o.lambda;
  out.minimizer.assign(d, 0.0);
  for (int64_t i = 0; i < o.size; ++i) {
    Example x;
    x.features.resize(d);
    double n = 0.0;
    for (int j = 0; j < d; ++j) {
      x.features[j] = normal(xr);
      n += x.features[j] * x.features[j];
    }
    n = std::sqrt(n);
    // Uniform in the unit ball.
    double r = std::pow(UniformDouble(xr), 1.0 / d);
    for (int j = 0; j < d; ++j) {
      x.features[j] = n > 0.0 ? x.features[j] * r / n : 0.0;
      out.minimizer[j] += x.features[j];
    }
    x.label = 0;
    out.dataset.data.examples.push_back(std::move(x));
  }
  for (double& v : out.minimizer) v /= static_cast<double>(o.size);
  out.default_split = "quadratic";
  return out;
}

}  // namespace

const char* SynthKindName(SynthKind kind) {
  switch (kind) {
    case SynthKind::kPurchaseLike:
      return "purchase-like";
    case SynthKind::kCriteoLike:
      return "criteo-like";
    case SynthKind::kLabelDpGaussian:
      return "label-dp-gaussian";
    case SynthKind::kStronglyConvexQuadratic:
      return "strongly-convex-quadratic";
  }
  return "?";
}

SynthKind ParseSynthKind(const std::string& name) {
  for (SynthKind k :
       {SynthKind::kPurchaseLike, SynthKind::kCriteoLike,
        SynthKind::kLabelDpGaussian, SynthKind::kStronglyConvexQuadratic}) {
    if (name == SynthKindName(k)) return k;
  }
  throw DomainError("unknown synthetic kind '" + name + "'");
}

SynthResult SynthGenerate(const SynthOptions& o) {
  if (o.size < 1) throw DomainError("synthetic size must be at least 1");
  if (o.dims < 1) throw DomainError("synthetic dims must be at least 1");
  int num_public = o.num_public;
  if (num_public < 0) {
    switch (o.kind) {
      case SynthKind::kPurchaseLike:
        num_public = std::max(1, o.dims / 6);
        break;
      case SynthKind::kCriteoLike:
        num_public = std::max(1, o.dims / 3);
        break;
      default:
        num_public = o.dims / 2;
    }
  }
  if (num_public > o.dims) throw DomainError("more public columns than dims");
  SynthResult out;
  switch (o.kind) {
    case SynthKind::kPurchaseLike:
      out = PurchaseLike(o, num_public);
      break;
    case SynthKind::kCriteoLike:
      out = CriteoLike(o, num_public);
      break;
    case SynthKind::kLabelDpGaussian:
      out = LabelDpGaussian(o);
      break;
    case SynthKind::kStronglyConvexQuadratic:
      out = Quadratic(o, num_public);
      break;
  }
  out.dataset.dictionaries.assign(o.dims, {});
  out.dataset.manifest.num_records = o.size;
  return out;
}

LossSplit MakeSplitForDataset(const std::string& kind,
                              const LoadedDataset& dataset, double lambda,
                              double radius) {
  const DatasetManifest& m = dataset.manifest;
  const std::vector<int> features = m.FeatureColumns();
  const int d = static_cast<int>(features.size());
  std::vector<int> pub, priv;
  for (int f = 0; f < d; ++f) {
    (m.columns[features[f]].role == ColumnRole::kPublic ? pub : priv).push_back(f);
  }
  const bool label_public = m.columns[m.LabelColumn()].role == ColumnRole::kPublic;
  const int k = std::max(2, dataset.data.num_classes);
  const double inf = std::numeric_limits<double>::infinity();
  if (kind == "label-dp") {
    if (!priv.empty() || label_public) {
      throw SchemaError("label-dp split needs every feature public and a private label");
    }
    return LogisticSplit(d, k);
  }
  if (kind == "padding" || kind == "masking") {
    if (!label_public) {
      throw SchemaError(kind + " split needs a public label");
    }
    BaseLoss base = SoftmaxCrossEntropy(d, k);
    if (kind == "masking") return MaskingSplit(priv, d, base, inf);
    double sq = 0.0;
    int64_t count = 0;
    for (const Example& x : dataset.data.examples) {
      for (int f : priv) {
        sq += x.features[f] * x.features[f];
        ++count;
      }
    }
    double fill = count > 0 ? std::sqrt(sq / static_cast<double>(count)) : 1.0;
    if (!(fill > 0.0)) fill = 1.0;
    return PaddingSplit(pub, priv, d, base, inf, fill);
  }
  if (kind == "quadratic") {
    return StronglyConvexQuadraticSplit(d, priv, lambda, m.norm_bound, radius);
  }
  throw DomainError("unknown split kind '" + kind + "'");
}

}  // namespace fdp
