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
#include "featuredp/mechanisms/gaussian_sum.h"

#include <random>
#include <string>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"

namespace fdp {

void AddGaussianNoise(double* v, int64_t n, double sigma, uint64_t seed,
                      uint64_t stream) {
  if (!(sigma >= 0.0)) throw DomainError("sigma must be non-negative");
  if (sigma == 0.0) return;
  std::mt19937_64 engine = MakeEngine(seed, {stream});
  std::normal_distribution<double> normal(0.0, sigma);
  for (int64_t i = 0; i < n; ++i) v[i] += normal(engine);
}

std::vector<double> GaussianSum(const std::vector<std::vector<double>>& vectors,
                                double sigma, uint64_t seed, int dim) {
  if (dim < 0) {
    if (vectors.empty()) {
      throw DomainError("dimension required for an empty gaussian sum");
    }
    dim = static_cast<int>(vectors.front().size());
  }
  std::vector<double> out(dim, 0.0);
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(vectors[i].size()) != dim) {
      throw DomainError("vector " + std::to_string(i) + " has dimension " +
                        std::to_string(vectors[i].size()) + ", expected " +
                        std::to_string(dim));
    }
    for (int j = 0; j < dim; ++j) out[j] += vectors[i][j];
  }
  AddGaussianNoise(out.data(), dim, sigma, seed, StreamId("gaussian-sum"));
  return out;
}

}  // namespace fdp
