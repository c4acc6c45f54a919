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
#include "featuredp/tradeoff/normal.h"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace fdp {
namespace {

const boost::math::normal_distribution<double>& StandardNormal() {
  static const boost::math::normal_distribution<double> kNormal(0.0, 1.0);
  return kNormal;
}

}  // namespace

double NormalCdf(double x) {
  if (std::isnan(x)) return x;
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  return boost::math::cdf(StandardNormal(), x);
}

double NormalSf(double x) { return NormalCdf(-x); }

double NormalLogPdf(double x) {
  return -0.5 * x * x - 0.5 * std::log(2.0 * std::numbers::pi);
}

double NormalQuantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return boost::math::quantile(StandardNormal(), p);
}

double NormalUpperQuantile(double q) { return -NormalQuantile(q); }

double Integrate(const std::function<double(double)>& f, double a, double b,
                 double* error_estimate) {
  double err = 0.0;
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, /*max_depth=*/18, /*tol=*/1e-13, &err);
  if (error_estimate != nullptr) *error_estimate = err;
  return value;
}

double GaussianDelta(double mu, double epsilon) {
  if (mu <= 0.0) return 0.0;
  return NormalCdf(mu / 2 - epsilon / mu) -
         std::exp(epsilon) * NormalCdf(-mu / 2 - epsilon / mu);
}

}  // namespace fdp
