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
#ifndef FEATUREDP_KERNELS_CONVOLUTION_H_
#define FEATUREDP_KERNELS_CONVOLUTION_H_

#include <vector>

namespace fdp {
namespace kernels {

// Full linear convolution c[k] = sum_i a[i] b[k - i]. Every output entry
// is accumulated in increasing i, so the OpenMP and serial versions agree
// bitwise.
std::vector<double> ConvolveDirect(const std::vector<double>& a,
                                   const std::vector<double>& b);
std::vector<double> ConvolveDirectSerial(const std::vector<double>& a,
                                         const std::vector<double>& b);

}  // namespace kernels
}  // namespace fdp

#endif  // FEATUREDP_KERNELS_CONVOLUTION_H_
