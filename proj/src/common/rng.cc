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
#include "featuredp/common/rng.h"

namespace fdp {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t h = SplitMix64(seed);
  for (uint64_t c : path) h = SplitMix64(h ^ SplitMix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

std::mt19937_64 MakeEngine(uint64_t seed,
                           std::initializer_list<uint64_t> path) {
  return std::mt19937_64(DeriveSeed(seed, path));
}

double CounterUniform(uint64_t seed, std::initializer_list<uint64_t> path) {
  return static_cast<double>(DeriveSeed(seed, path) >> 11) * 0x1.0p-53;
}

uint64_t StreamId(const char* name) {
  // FNV-1a.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const char* c = name; *c != '\0'; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fdp
