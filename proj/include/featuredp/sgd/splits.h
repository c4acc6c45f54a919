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
#ifndef FEATUREDP_SGD_SPLITS_H_
#define FEATUREDP_SGD_SPLITS_H_

#include <vector>

#include "featuredp/sgd/loss_split.h"

namespace fdp {

// Label-private softmax regression: pub_grad = x softmax(x^T W)^T,
// priv_grad = -x y^T (one-hot y), full_grad = x (softmax - y)^T. Inputs
// must satisfy ||x|| <= 1; larger inputs raise ContractViolation.
LossSplit LogisticSplit(int num_features, int num_classes);

// Public loss: base loss on the record with private columns replaced by
// fresh N(0, fill_scale^2) draws seeded by the gradient seed. Throws
// SchemaError on duplicate or out-of-range columns.
LossSplit PaddingSplit(const std::vector<int>& public_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz, double fill_scale = 1.0);

// Same with both sides declared; throws SchemaError when they overlap or
// fail to cover every column.
LossSplit PaddingSplit(const std::vector<int>& public_columns,
                       const std::vector<int>& private_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz, double fill_scale = 1.0);

// Public loss: base loss with private columns set to zero.
LossSplit MaskingSplit(const std::vector<int>& private_columns,
                       int total_columns, const BaseLoss& base,
                       double priv_lipschitz);

// l_priv = 0, l_pub = ||w - w_star||^2 / 2, independent of the data.
LossSplit QuadraticPublicSplit(const std::vector<double>& w_star);

// l(w; z) = lambda/2 ||w - z||^2 with the public coordinates of z in
// l_pub and the cross terms of the private coordinates in l_priv:
//   l_pub  = lambda/2 (sum_pub (w_j - z_j)^2 + sum_priv w_j^2)
//   l_priv = lambda/2 sum_priv (z_j^2 - 2 w_j z_j).
// With ||z|| <= data_radius and ||w|| <= weight_radius the declared
// constants are tau = lambda * data_radius and
// tau' = lambda * (weight_radius + data_radius).
LossSplit StronglyConvexQuadraticSplit(int dim,
                                       const std::vector<int>& private_columns,
                                       double lambda, double data_radius,
                                       double weight_radius);

// Scalar problem with records (u, b), b in {0, 1} private:
// l_pub = (w - u)^2 / 2, l_priv = -tau b w.
LossSplit ScalarAuditSplit(double tau);

}  // namespace fdp

#endif  // FEATUREDP_SGD_SPLITS_H_
