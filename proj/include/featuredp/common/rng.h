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
#ifndef FEATUREDP_COMMON_RNG_H_
#define FEATUREDP_COMMON_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace fdp {

// One step of the splitmix64 finalizer.
uint64_t SplitMix64(uint64_t x);

// Derives an independent 64-bit seed from a parent seed and a list of
// stream/counter coordinates. Counter-based: the result depends only on
// the arguments, so per-record and per-step randomness can be drawn in
// any order (and from any thread) without changing outcomes.
uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path);

// Engine for a given (seed, path) coordinate.
std::mt19937_64 MakeEngine(uint64_t seed, std::initializer_list<uint64_t> path);

// Uniform double in [0, 1) using the top 53 bits.
inline double UniformDouble(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

// Uniform double in [0, 1) from a single counter coordinate.
double CounterUniform(uint64_t seed, std::initializer_list<uint64_t> path);

// Hashes an arbitrary string into a stream identifier.
uint64_t StreamId(const char* name);

}  // namespace fdp

#endif  // FEATUREDP_COMMON_RNG_H_
