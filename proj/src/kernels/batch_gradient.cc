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
#include "featuredp/kernels/batch_gradient.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

namespace fdp {
namespace kernels {
namespace {

// Sums one chunk into `partial` (dim entries, zeroed here).
AccumulateStats SumChunk(int64_t chunk, int64_t count, int64_t dim,
                         const ExampleGradient& grad, double clip,
                         double* partial, double* scratch) {
  AccumulateStats stats;
  std::fill(partial, partial + dim, 0.0);
  const int64_t begin = chunk * kGradientChunk;
  const int64_t end = std::min(count, begin + kGradientChunk);
  for (int64_t pos = begin; pos < end; ++pos) {
    std::fill(scratch, scratch + dim, 0.0);
    grad(pos, scratch);
    double sq = 0.0;
    for (int64_t j = 0; j < dim; ++j) sq += scratch[j] * scratch[j];
    double norm = std::sqrt(sq);
    if (!std::isfinite(norm)) {
      if (stats.non_finite_position < 0) stats.non_finite_position = pos;
      continue;
    }
    stats.max_norm = std::max(stats.max_norm, norm);
    double scale = 1.0;
    if (clip > 0.0 && norm > clip) {
      scale = clip / norm;
      ++stats.clipped;
    }
    if (scale == 1.0) {
      for (int64_t j = 0; j < dim; ++j) partial[j] += scratch[j];
    } else {
      for (int64_t j = 0; j < dim; ++j) partial[j] += scale * scratch[j];
    }
  }
  return stats;
}

void Merge(AccumulateStats* into, const AccumulateStats& from) {
  into->clipped += from.clipped;
  into->max_norm = std::max(into->max_norm, from.max_norm);
  if (from.non_finite_position >= 0 &&
      (into->non_finite_position < 0 ||
       from.non_finite_position < into->non_finite_position)) {
    into->non_finite_position = from.non_finite_position;
  }
}

}  // namespace

AccumulateStats AccumulateGradients(int64_t count, int64_t dim,
                                    const ExampleGradient& grad, double clip,
                                    double* out) {
  std::fill(out, out + dim, 0.0);
  const int64_t chunks = (count + kGradientChunk - 1) / kGradientChunk;
  if (chunks == 0) return {};
  if (omp_get_max_threads() == 1 || chunks == 1) {
    return AccumulateGradientsSerial(count, dim, grad, clip, out);
  }
  std::vector<double> partials(chunks * dim);
  std::vector<AccumulateStats> stats(chunks);
#pragma omp parallel
  {
    std::vector<double> scratch(dim);
#pragma omp for schedule(dynamic, 1)
    for (int64_t c = 0; c < chunks; ++c) {
      stats[c] = SumChunk(c, count, dim, grad, clip, &partials[c * dim],
                          scratch.data());
    }
  }
  AccumulateStats total;
  for (int64_t c = 0; c < chunks; ++c) {
    const double* p = &partials[c * dim];
    for (int64_t j = 0; j < dim; ++j) out[j] += p[j];
    Merge(&total, stats[c]);
  }
  return total;
}

AccumulateStats AccumulateGradientsSerial(int64_t count, int64_t dim,
                                          const ExampleGradient& grad,
                                          double clip, double* out) {
  std::fill(out, out + dim, 0.0);
  const int64_t chunks = (count + kGradientChunk - 1) / kGradientChunk;
  std::vector<double> partial(dim);
  std::vector<double> scratch(dim);
  AccumulateStats total;
  for (int64_t c = 0; c < chunks; ++c) {
    Merge(&total,
          SumChunk(c, count, dim, grad, clip, partial.data(), scratch.data()));
    for (int64_t j = 0; j < dim; ++j) out[j] += partial[j];
  }
  return total;
}

}  // namespace kernels
}  // namespace fdp
