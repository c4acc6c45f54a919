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
#include "featuredp/kernels/score_sampling.h"

#include <algorithm>

#include "featuredp/common/rng.h"

namespace fdp {
namespace kernels {
namespace {

void FillChunk(const ScoreSampler& sampler, int64_t n, uint64_t seed,
               uint64_t stream, int64_t chunk, double* out) {
  std::mt19937_64 engine =
      MakeEngine(seed, {stream, static_cast<uint64_t>(chunk)});
  const int64_t begin = chunk * kScoreChunk;
  const int64_t end = std::min(n, begin + kScoreChunk);
  for (int64_t i = begin; i < end; ++i) out[i] = sampler(engine);
}

}  // namespace

std::vector<double> SampleScores(const ScoreSampler& sampler, int64_t n,
                                 uint64_t seed, uint64_t stream) {
  std::vector<double> out(n);
  const int64_t chunks = (n + kScoreChunk - 1) / kScoreChunk;
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t c = 0; c < chunks; ++c) {
    FillChunk(sampler, n, seed, stream, c, out.data());
  }
  return out;
}

std::vector<double> SampleScoresSerial(const ScoreSampler& sampler, int64_t n,
                                       uint64_t seed, uint64_t stream) {
  std::vector<double> out(n);
  const int64_t chunks = (n + kScoreChunk - 1) / kScoreChunk;
  for (int64_t c = 0; c < chunks; ++c) {
    FillChunk(sampler, n, seed, stream, c, out.data());
  }
  return out;
}

}  // namespace kernels
}  // namespace fdp
