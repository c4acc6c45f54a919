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
#ifndef FEATUREDP_SGD_LOSS_SPLIT_H_
#define FEATUREDP_SGD_LOSS_SPLIT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "featuredp/mechanisms/feature_map.h"

namespace fdp {

// Gradient callbacks write param_dim entries into `out`. The seed feeds
// any randomness a split needs (Gaussian padding); pub_grad and priv_grad
// called with the same seed see the same draws.
using PublicGradFn = std::function<void(const double* w, const PublicPart& pub,
                                        uint64_t seed, double* out)>;
using PrivateGradFn = std::function<void(const double* w, const Example& x,
                                         uint64_t seed, double* out)>;
using FullGradFn =
    std::function<void(const double* w, const Example& x, double* out)>;
using LossFn = std::function<double(const double* w, const Example& x)>;
using PredictFn = std::function<int(const double* w, const Example& x)>;

// l = l_priv + l_pub where l_pub reads only Psi(x). pub_grad receives a
// PublicPart, so private fields cannot reach it.
struct LossSplit {
  std::string name;
  FeatureMap feature_map = FeatureMap::IdentityPublic(0);
  int param_dim = 0;
  PublicGradFn pub_grad;
  PrivateGradFn priv_grad;
  FullGradFn full_grad;
  LossFn loss;
  // Null for splits without a classification rule.
  PredictFn predict;
  // Declared bounds on ||priv_grad|| and ||full_grad||; infinity when none
  // is claimed.
  double priv_lipschitz = 0.0;
  double full_lipschitz = 0.0;
};

// A per-example loss on raw features, used to build padding and masking
// splits. Parameters are laid out as num_features x num_outputs, row-major.
struct BaseLoss {
  std::string name;
  int num_features = 0;
  int num_outputs = 1;
  std::function<void(const double* w, const std::vector<double>& features,
                     int label, double* out)>
      grad;
  std::function<double(const double* w, const std::vector<double>& features,
                       int label)>
      value;
  std::function<int(const double* w, const std::vector<double>& features)>
      predict;

  int param_dim() const { return num_features * num_outputs; }
};

// Multiclass softmax cross-entropy on a linear model x^T W.
BaseLoss SoftmaxCrossEntropy(int num_features, int num_classes);

// softmax(x^T W) for W laid out as above.
void SoftmaxScores(const double* w, const double* x, int num_features,
                   int num_classes, double* probs);

// ||pub + priv - full|| / max(||full||, ||pub||, ||priv||) at one point,
// 0 when the residual vanishes.
double SumIdentityError(const LossSplit& split, const std::vector<double>& w,
                        const Example& x, uint64_t seed);

double Norm2(const double* v, int n);

}  // namespace fdp

#endif  // FEATUREDP_SGD_LOSS_SPLIT_H_
