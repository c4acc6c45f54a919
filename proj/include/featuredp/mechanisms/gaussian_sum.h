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
#ifndef FEATUREDP_MECHANISMS_GAUSSIAN_SUM_H_
#define FEATUREDP_MECHANISMS_GAUSSIAN_SUM_H_

#include <cstdint>
#include <vector>

namespace fdp {

// Coordinate-wise sum of `vectors` plus i.i.d. N(0, sigma^2) noise. `dim`
// is required when the list is empty and checked otherwise (-1 to infer).
// Throws DomainError on a dimension mismatch or negative sigma.
std::vector<double> GaussianSum(const std::vector<std::vector<double>>& vectors,
                                double sigma, uint64_t seed, int dim = -1);

// Adds N(0, sigma^2) to each of the n entries of v, drawn from the engine
// at (seed, {stream}).
void AddGaussianNoise(double* v, int64_t n, double sigma, uint64_t seed,
                      uint64_t stream);

}  // namespace fdp

#endif  // FEATUREDP_MECHANISMS_GAUSSIAN_SUM_H_
