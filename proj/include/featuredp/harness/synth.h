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
#ifndef FEATUREDP_HARNESS_SYNTH_H_
#define FEATUREDP_HARNESS_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "featuredp/harness/dataset.h"
#include "featuredp/sgd/loss_split.h"

namespace fdp {

enum class SynthKind {
  kPurchaseLike,
  kCriteoLike,
  kLabelDpGaussian,
  kStronglyConvexQuadratic,
};

const char* SynthKindName(SynthKind kind);
// Throws DomainError on unknown names.
SynthKind ParseSynthKind(const std::string& name);

struct SynthOptions {
  SynthKind kind = SynthKind::kLabelDpGaussian;
  int64_t size = 10000;
  int dims = 20;
  uint64_t seed = 0;
  // Public feature count; -1 picks the kind's default (dims / 6 for
  // purchase-like, dims / 3 for criteo-like, dims / 2 for the quadratic).
  int num_public = -1;
  // Purchase-like class count.
  int num_classes = 10;
  // Label-dp-gaussian: every point sits at least this far (before the
  // norm rescaling) from the planted hyperplane.
  double margin = 1.0;
  // Quadratic strong-convexity parameter.
  double lambda = 0.5;
  // Purchase-like: probability that a feature bit is set.
  double density = 0.2;
  // Purchase-like: weight scale of private rows relative to public rows.
  double private_signal = 0.3;
  // Purchase-like and criteo-like: logit noise (Gumbel scale).
  double label_noise = 0.1;
};

struct SynthResult {
  LoadedDataset dataset;
  // Classification kinds: planted separator (row-major d x k for
  // purchase-like, a d-vector otherwise).
  std::vector<double> planted;
  // Quadratic: minimizer of the average loss (the record mean) and lambda.
  std::vector<double> minimizer;
  double lambda = 0.0;
  // Split the harness uses for this data by default.
  std::string default_split;
};

// Deterministic in the options; throws DomainError when size < 1 or the
// dimensions are inconsistent.
SynthResult SynthGenerate(const SynthOptions& options);

// Builds a loss split for a loaded dataset. Kinds: "label-dp" (softmax,
// every feature public, label private), "padding", "masking" (softmax
// with a public label) and "quadratic" (lambda/2 ||w - z||^2, data radius
// from the manifest norm bound, weight radius `radius`).
// For padding the fill scale is the RMS of the private feature values.
LossSplit MakeSplitForDataset(const std::string& kind,
                              const LoadedDataset& dataset,
                              double lambda = 0.5, double radius = 2.0);

}  // namespace fdp

#endif  // FEATUREDP_HARNESS_SYNTH_H_
