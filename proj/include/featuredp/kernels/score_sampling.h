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
#ifndef FEATUREDP_KERNELS_SCORE_SAMPLING_H_
#define FEATUREDP_KERNELS_SCORE_SAMPLING_H_

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace fdp {
namespace kernels {

// Draws one scalar score. Must be safe to call concurrently with distinct
// engines.
using ScoreSampler = std::function<double(std::mt19937_64&)>;

inline constexpr int64_t kScoreChunk = 4096;

// n scores; chunk c of kScoreChunk draws uses the engine seeded from
// (seed, stream, c), so results do not depend on the thread count.
std::vector<double> SampleScores(const ScoreSampler& sampler, int64_t n,
                                 uint64_t seed, uint64_t stream);
std::vector<double> SampleScoresSerial(const ScoreSampler& sampler, int64_t n,
                                       uint64_t seed, uint64_t stream);

}  // namespace kernels
}  // namespace fdp

#endif  // FEATUREDP_KERNELS_SCORE_SAMPLING_H_
