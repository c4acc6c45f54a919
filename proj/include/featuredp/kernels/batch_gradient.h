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
#ifndef FEATUREDP_KERNELS_BATCH_GRADIENT_H_
#define FEATUREDP_KERNELS_BATCH_GRADIENT_H_

#include <cstdint>
#include <functional>

namespace fdp {
namespace kernels {

// Writes the gradient of the example at batch position `position` into
// `out` (dim entries, zero-initialized by the caller). Must be safe to
// call concurrently for distinct positions.
using ExampleGradient = std::function<void(int64_t position, double* out)>;

inline constexpr int64_t kGradientChunk = 32;

struct AccumulateStats {
  int64_t clipped = 0;
  // Largest per-example norm seen before clipping.
  double max_norm = 0.0;
  // First position whose gradient had a non-finite entry, or -1.
  int64_t non_finite_position = -1;
};

// out[0..dim) = sum over positions of clip(grad(position)), where clip
// rescales to norm `clip` when clip > 0 and is the identity otherwise.
// Examples are summed in fixed chunks of kGradientChunk and chunk partials
// are added in chunk order, so both versions agree bitwise.
AccumulateStats AccumulateGradients(int64_t count, int64_t dim,
                                    const ExampleGradient& grad, double clip,
                                    double* out);
AccumulateStats AccumulateGradientsSerial(int64_t count, int64_t dim,
                                          const ExampleGradient& grad,
                                          double clip, double* out);

}  // namespace kernels
}  // namespace fdp

#endif  // FEATUREDP_KERNELS_BATCH_GRADIENT_H_
