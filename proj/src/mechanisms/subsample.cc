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
#include "featuredp/mechanisms/subsample.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "featuredp/common/errors.h"
#include "featuredp/common/rng.h"

namespace fdp {

std::vector<size_t> PoissonSubsampleIndices(size_t n, double prob,
                                            uint64_t seed, uint64_t stream) {
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw DomainError("sampling probability must lie in [0, 1]");
  }
  std::vector<size_t> kept;
  if (prob == 0.0) return kept;
  if (prob == 1.0) {
    kept.resize(n);
    std::iota(kept.begin(), kept.end(), size_t{0});
    return kept;
  }
  for (size_t i = 0; i < n; ++i) {
    if (CounterUniform(seed, {stream, i}) < prob) kept.push_back(i);
  }
  return kept;
}

std::vector<size_t> SampleWithoutReplacement(size_t n, size_t k,
                                             uint64_t seed, uint64_t stream) {
  if (k > n) throw DomainError("cannot sample more records than available");
  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), size_t{0});
  if (k == n) return idx;
  std::mt19937_64 engine = MakeEngine(seed, {stream});
  // Partial Fisher-Yates.
  for (size_t i = 0; i < k; ++i) {
    size_t j = i + static_cast<size_t>(UniformDouble(engine) * (n - i));
    if (j >= n) j = n - 1;
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace fdp
