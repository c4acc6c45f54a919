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
#include "featuredp/kernels/convolution.h"

#include <algorithm>
#include <cstdint>

namespace fdp {
namespace kernels {
namespace {

inline double OutputEntry(const std::vector<double>& a,
                          const std::vector<double>& b, int64_t k) {
  const int64_t na = static_cast<int64_t>(a.size());
  const int64_t nb = static_cast<int64_t>(b.size());
  const int64_t lo = std::max<int64_t>(0, k - nb + 1);
  const int64_t hi = std::min<int64_t>(na - 1, k);
  double s = 0.0;
  for (int64_t i = lo; i <= hi; ++i) s += a[i] * b[k - i];
  return s;
}

}  // namespace

std::vector<double> ConvolveDirect(const std::vector<double>& a,
                                   const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const int64_t n = static_cast<int64_t>(a.size() + b.size() - 1);
  std::vector<double> out(n);
#pragma omp parallel for schedule(static)
  for (int64_t k = 0; k < n; ++k) out[k] = OutputEntry(a, b, k);
  return out;
}

std::vector<double> ConvolveDirectSerial(const std::vector<double>& a,
                                         const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  const int64_t n = static_cast<int64_t>(a.size() + b.size() - 1);
  std::vector<double> out(n);
  for (int64_t k = 0; k < n; ++k) out[k] = OutputEntry(a, b, k);
  return out;
}

}  // namespace kernels
}  // namespace fdp
