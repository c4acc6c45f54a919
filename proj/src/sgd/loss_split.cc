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
#include "featuredp/sgd/loss_split.h"

#include <algorithm>
#include <cmath>

#include "featuredp/common/errors.h"

namespace fdp {

double Norm2(const double* v, int n) {
  double sq = 0.0;
  for (int i = 0; i < n; ++i) sq += v[i] * v[i];
  return std::sqrt(sq);
}

void SoftmaxScores(const double* w, const double* x, int num_features,
                   int num_classes, double* probs) {
  for (int c = 0; c < num_classes; ++c) probs[c] = 0.0;
  for (int j = 0; j < num_features; ++j) {
    if (x[j] == 0.0) continue;
    const double* row = w + static_cast<size_t>(j) * num_classes;
    for (int c = 0; c < num_classes; ++c) probs[c] += x[j] * row[c];
  }
  double top = *std::max_element(probs, probs + num_classes);
  double total = 0.0;
  for (int c = 0; c < num_classes; ++c) {
    probs[c] = std::exp(probs[c] - top);
    total += probs[c];
  }
  for (int c = 0; c < num_classes; ++c) probs[c] /= total;
}

BaseLoss SoftmaxCrossEntropy(int num_features, int num_classes) {
  if (num_features < 1 || num_classes < 1) {
    throw DomainError("softmax loss needs d, k >= 1");
  }
  BaseLoss loss;
  loss.name = "softmax-cross-entropy";
  loss.num_features = num_features;
  loss.num_outputs = num_classes;
  const int d = num_features;
  const int k = num_classes;
  loss.grad = [d, k](const double* w, const std::vector<double>& x, int label,
                     double* out) {
    std::vector<double> probs(k);
    SoftmaxScores(w, x.data(), d, k, probs.data());
    if (label >= 0 && label < k) probs[label] -= 1.0;
    for (int j = 0; j < d; ++j) {
      double* row = out + static_cast<size_t>(j) * k;
      for (int c = 0; c < k; ++c) row[c] = x[j] * probs[c];
    }
  };
  loss.value = [d, k](const double* w, const std::vector<double>& x,
                      int label) {
    std::vector<double> logits(k, 0.0);
    for (int j = 0; j < d; ++j) {
      for (int c = 0; c < k; ++c) logits[c] += x[j] * w[j * k + c];
    }
    double top = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double v : logits) total += std::exp(v - top);
    return top + std::log(total) - logits[label];
  };
  loss.predict = [d, k](const double* w, const std::vector<double>& x) {
    std::vector<double> logits(k, 0.0);
    for (int j = 0; j < d; ++j) {
      if (x[j] == 0.0) continue;
      for (int c = 0; c < k; ++c) logits[c] += x[j] * w[j * k + c];
    }
    return static_cast<int>(std::max_element(logits.begin(), logits.end()) -
                            logits.begin());
  };
  return loss;
}

double SumIdentityError(const LossSplit& split, const std::vector<double>& w,
                        const Example& x, uint64_t seed) {
  const int n = split.param_dim;
  std::vector<double> pub(n, 0.0), priv(n, 0.0), full(n, 0.0);
  split.pub_grad(w.data(), split.feature_map.Apply(x), seed, pub.data());
  split.priv_grad(w.data(), x, seed, priv.data());
  split.full_grad(w.data(), x, full.data());
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = pub[i] + priv[i] - full[i];
    err += r * r;
  }
  err = std::sqrt(err);
  if (err == 0.0) return 0.0;
  double scale = std::max({Norm2(full.data(), n), Norm2(pub.data(), n),
                           Norm2(priv.data(), n)});
  return err / scale;
}

}  // namespace fdp
