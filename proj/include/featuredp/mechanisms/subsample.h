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
#ifndef FEATUREDP_MECHANISMS_SUBSAMPLE_H_
#define FEATUREDP_MECHANISMS_SUBSAMPLE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fdp {

// Indices i < n kept by Poisson sampling with probability `prob`, in
// increasing order. Record i is kept iff CounterUniform(seed, {stream, i})
// < prob, so the decision for a record does not depend on n.
std::vector<size_t> PoissonSubsampleIndices(size_t n, double prob,
                                            uint64_t seed,
                                            uint64_t stream = 0);

template <typename T>
std::vector<T> PoissonSubsample(const std::vector<T>& data, double prob,
                                uint64_t seed, uint64_t stream = 0) {
  std::vector<T> out;
  for (size_t i : PoissonSubsampleIndices(data.size(), prob, seed, stream)) {
    out.push_back(data[i]);
  }
  return out;
}

// k distinct indices from [0, n), uniformly without replacement, sorted.
std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k,
                                             uint64_t seed, uint64_t stream);

}  // namespace fdp

#endif  // FEATUREDP_MECHANISMS_SUBSAMPLE_H_
