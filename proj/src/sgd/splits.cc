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
#include "featuredp/sgd/splits.h"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"

namespace fdp {
namespace {

void CheckUnitNorm(const std::vector<double>& x) {
  double n = Norm2(x.data(), static_cast<int>(x.size()));
  if (n > 1.0 + 1e-12) {
    throw ContractViolation("logistic split needs ||x|| <= 1, got " +
                            std::to_string(n));
  }
}

std::vector<int> Complement(const std::vector<int>& columns, int total,
                            const char* what) {
  std::vector<char> seen(total, 0);
  for (int c : columns) {
    if (c < 0 || c >= total) {
      throw SchemaError(std::string(what) + " column " + std::to_string(c) +
                        " out of range");
    }
    if (seen[c]) {
      throw SchemaError(std::string(what) + " column " + std::to_string(c) +
                        " declared twice");
    }
    seen[c] = 1;
  }
  std::vector<int> rest;
  for (int c = 0; c < total; ++c) {
    if (!seen[c]) rest.push_back(c);
  }
  return rest;
}

// Full gradient minus public gradient at the same seed.
PrivateGradFn DifferenceGrad(const FullGradFn& full, const PublicGradFn& pub,
                             const FeatureMap& map, int dim) {
  return [full, pub, map, dim](const double* w, const Example& x,
                               uint64_t seed, double* out) {
    std::vector<double> g(dim, 0.0);
    pub(w, map.Apply(x), seed, g.data());
    full(w, x, out);
    for (int i = 0; i < dim; ++i) out[i] -= g[i];
  };
}

// Split built from a base loss and a rule for filling private columns.
LossSplit FilledSplit(std::string name, FeatureMap map, const BaseLoss& base,
                      double priv_lipschitz, double fill_scale) {
  if (base.num_features != map.num_features()) {
    throw SchemaError("base loss expects " +
                      std::to_string(base.num_features) +
                      " features, split declares " +
                      std::to_string(map.num_features()));
  }
  if (!map.label_public()) {
    throw SchemaError("padding and masking splits need a public label");
  }
  LossSplit split;
  split.name = std::move(name);
  split.feature_map = map;
  split.param_dim = base.param_dim();
  split.priv_lipschitz = priv_lipschitz;
  split.full_lipschitz = std::numeric_limits<double>::infinity();
  const int d = map.num_features();
  auto grad = base.grad;
  const std::vector<int> priv_cols = map.private_features();
  split.pub_grad = [grad, d, priv_cols, fill_scale](
                       const double* w, const PublicPart& pub, uint64_t seed,
                       double* out) {
    std::vector<double> x(d, 0.0);
    for (size_t i = 0; i < pub.index.size(); ++i) x[pub.index[i]] = pub.values[i];
    if (fill_scale > 0.0 && !priv_cols.empty()) {
      std::mt19937_64 engine(seed);
      std::normal_distribution<double> normal(0.0, fill_scale);
      for (int c : priv_cols) x[c] = normal(engine);
    }
    grad(w, x, pub.label, out);
  };
  split.full_grad = [grad](const double* w, const Example& x, double* out) {
    grad(w, x.features, x.label, out);
  };
  split.priv_grad =
      DifferenceGrad(split.full_grad, split.pub_grad, map, split.param_dim);
  auto value = base.value;
  split.loss = [value](const double* w, const Example& x) {
    return value(w, x.features, x.label);
  };
  if (base.predict) {
    auto predict = base.predict;
    split.predict = [predict](const double* w, const Example& x) {
      return predict(w, x.features);
    };
  }
  return split;
}

}  // namespace

LossSplit LogisticSplit(int num_features, int num_classes) {
  if (num_features < 1 || num_classes < 1) {
    throw DomainError("logistic split needs d, k >= 1");
  }
  const int d = num_features;
  const int k = num_classes;
  LossSplit split;
  split.name = "logistic";
  split.feature_map = FeatureMap::LabelDp(d);
  split.param_dim = d * k;
  split.priv_lipschitz = 1.0;
  split.full_lipschitz = std::sqrt(2.0);
  split.pub_grad = [d, k](const double* w, const PublicPart& pub, uint64_t,
                          double* out) {
    CheckUnitNorm(pub.values);
    std::vector<double> probs(k);
    SoftmaxScores(w, pub.values.data(), d, k, probs.data());
    for (int j = 0; j < d; ++j) {
      for (int c = 0; c < k; ++c) out[j * k + c] = pub.values[j] * probs[c];
    }
  };
  split.priv_grad = [d, k](const double*, const Example& x, uint64_t,
                           double* out) {
    CheckUnitNorm(x.features);
    for (int j = 0; j < d * k; ++j) out[j] = 0.0;
    if (x.label < 0 || x.label >= k) {
      throw DomainError("label " + std::to_string(x.label) + " out of range");
    }
    for (int j = 0; j < d; ++j) out[j * k + x.label] = -x.features[j];
  };
  split.full_grad = [d, k](const double* w, const Example& x, double* out) {
    CheckUnitNorm(x.features);
    std::vector<double> probs(k);
    SoftmaxScores(w, x.features.data(), d, k, probs.data());
    probs[x.label] -= 1.0;
    for (int j = 0; j < d; ++j) {
      for (int c = 0; c < k; ++c) out[j * k + c] = x.features[j] * probs[c];
    }
  };
  BaseLoss base = SoftmaxCrossEntropy(d, k);
  auto value = base.value;
  auto predict = base.predict;
  split.loss = [value](const double* w, const Example& x) {
    return value(w, x.features, x.label);
  };
  split.predict = [predict](const double* w, const Example& x) {
    return predict(w, x.features);
  };
  return split;
}

LossSplit PaddingSplit(const std::vector<int>& public_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz, double fill_scale) {
  std::vector<int> priv = Complement(public_columns, total_columns, "public");
  return FilledSplit("padding",
                     FeatureMap::PrivateColumns(total_columns, priv), base,
                     priv_lipschitz, fill_scale);
}

LossSplit PaddingSplit(const std::vector<int>& public_columns,
                       const std::vector<int>& private_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz, double fill_scale) {
  Complement(public_columns, total_columns, "public");
  Complement(private_columns, total_columns, "private");
  std::vector<char> is_public(total_columns, 0);
  for (int c : public_columns) is_public[c] = 1;
  for (int c : private_columns) {
    if (is_public[c]) {
      throw SchemaError("column " + std::to_string(c) +
                        " declared both public and private");
    }
  }
  if (public_columns.size() + private_columns.size() !=
      static_cast<size_t>(total_columns)) {
    throw SchemaError("public and private columns do not cover the record");
  }
  return PaddingSplit(public_columns, total_columns, base, priv_lipschitz,
                      fill_scale);
}

LossSplit MaskingSplit(const std::vector<int>& private_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz) {
  Complement(private_columns, total_columns, "private");
  return FilledSplit("masking",
                     FeatureMap::PrivateColumns(total_columns, private_columns),
                     base, priv_lipschitz, 0.0);
}

LossSplit QuadraticPublicSplit(const std::vector<double>& w_star) {
  const int d = static_cast<int>(w_star.size());
  if (d < 1) throw DomainError("quadratic split needs a non-empty target");
  LossSplit split;
  split.name = "quadratic-public";
  split.feature_map = FeatureMap::IdentityPublic(0);
  split.param_dim = d;
  split.priv_lipschitz = 0.0;
  split.full_lipschitz = std::numeric_limits<double>::infinity();
  split.pub_grad = [w_star, d](const double* w, const PublicPart&, uint64_t,
                               double* out) {
    for (int i = 0; i < d; ++i) out[i] = w[i] - w_star[i];
  };
  split.priv_grad = [d](const double*, const Example&, uint64_t, double* out) {
    for (int i = 0; i < d; ++i) out[i] = 0.0;
  };
  split.full_grad = [w_star, d](const double* w, const Example&, double* out) {
    for (int i = 0; i < d; ++i) out[i] = w[i] - w_star[i];
  };
  split.loss = [w_star, d](const double* w, const Example&) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (w[i] - w_star[i]) * (w[i] - w_star[i]);
    return 0.5 * s;
  };
  return split;
}

LossSplit StronglyConvexQuadraticSplit(int dim,
                                       const std::vector<int>& private_columns,
                                       double lambda, double data_radius,
                                       double weight_radius) {
  if (dim < 1) throw DomainError("dimension must be positive");
  if (!(lambda > 0.0) || !(data_radius >= 0.0) || !(weight_radius >= 0.0)) {
    throw DomainError("lambda must be positive and radii non-negative");
  }
  Complement(private_columns, dim, "private");
  FeatureMap map = FeatureMap::PrivateColumns(dim, private_columns);
  std::vector<char> is_private(dim, 0);
  for (int c : private_columns) is_private[c] = 1;
  LossSplit split;
  split.name = "strongly-convex-quadratic";
  split.feature_map = map;
  split.param_dim = dim;
  split.priv_lipschitz = lambda * data_radius;
  split.full_lipschitz = lambda * (weight_radius + data_radius);
  split.pub_grad = [dim, lambda](const double* w, const PublicPart& pub,
                                 uint64_t, double* out) {
    for (int i = 0; i < dim; ++i) out[i] = lambda * w[i];
    for (size_t i = 0; i < pub.index.size(); ++i) {
      out[pub.index[i]] -= lambda * pub.values[i];
    }
  };
  split.priv_grad = [dim, lambda, is_private](const double*, const Example& x,
                                              uint64_t, double* out) {
    for (int i = 0; i < dim; ++i) {
      out[i] = is_private[i] ? -lambda * x.features[i] : 0.0;
    }
  };
  split.full_grad = [dim, lambda](const double* w, const Example& x,
                                  double* out) {
    for (int i = 0; i < dim; ++i) out[i] = lambda * (w[i] - x.features[i]);
  };
  split.loss = [dim, lambda](const double* w, const Example& x) {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      double r = w[i] - x.features[i];
      s += r * r;
    }
    return 0.5 * lambda * s;
  };
  return split;
}

LossSplit ScalarAuditSplit(double tau) {
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  LossSplit split;
  split.name = "scalar-audit";
  split.feature_map = FeatureMap::PrivateColumns(2, {1});
  split.param_dim = 1;
  split.priv_lipschitz = tau;
  split.full_lipschitz = std::numeric_limits<double>::infinity();
  split.pub_grad = [](const double* w, const PublicPart& pub, uint64_t,
                      double* out) { out[0] = w[0] - pub.values[0]; };
  split.priv_grad = [tau](const double*, const Example& x, uint64_t,
                          double* out) { out[0] = -tau * x.features[1]; };
  split.full_grad = [tau](const double* w, const Example& x, double* out) {
    out[0] = w[0] - x.features[0] - tau * x.features[1];
  };
  split.loss = [tau](const double* w, const Example& x) {
    double r = w[0] - x.features[0];
    return 0.5 * r * r - tau * x.features[1] * w[0];
  };
  return split;
}

}  // namespace fdp
