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
#ifndef FEATUREDP_TRADEOFF_NORMAL_H_
#define FEATUREDP_TRADEOFF_NORMAL_H_

#include <functional>

namespace fdp {

// Standard normal distribution helpers. Tails are computed directly (not
// as 1 - cdf) so that values down to ~1e-300 keep full relative precision.
double NormalCdf(double x);
double NormalSf(double x);
double NormalLogPdf(double x);
// Inverse of NormalCdf; returns -inf at 0 and +inf at 1.
double NormalQuantile(double p);
// Inverse of NormalSf, i.e. NormalQuantile(1 - q) without cancellation.
double NormalUpperQuantile(double q);

// Adaptive Gauss-Kronrod integral of f over [a, b]; a and b may be
// infinite. Returns the estimate and writes the error estimate.
double Integrate(const std::function<double(double)>& f, double a, double b,
                 double* error_estimate = nullptr);

// Delta of the Gaussian mechanism with unit sensitivity/noise ratio mu at
// privacy level epsilon: Phi(mu/2 - eps/mu) - e^eps Phi(-mu/2 - eps/mu).
double GaussianDelta(double mu, double epsilon);

}  // namespace fdp

#endif  // FEATUREDP_TRADEOFF_NORMAL_H_
