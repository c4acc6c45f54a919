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
#include <omp.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "featuredp/kernels/batch_gradient.h"
#include "featuredp/kernels/convolution.h"
#include "featuredp/kernels/score_sampling.h"

namespace fdp {
namespace kernels {
namespace {

class KernelsTest : public ::testing::Test {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
};

bool BitwiseEqual(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

TEST_F(KernelsTest, AccumulateGradientsMatchesSerial) {
  const int64_t dim = 7;
  for (int64_t count : {0, 1, 31, 32, 33, 1000}) {
    for (double clip : {0.0, 0.5}) {
      ExampleGradient grad = [](int64_t pos, double* out) {
        for (int64_t j = 0; j < dim; ++j) {
          out[j] = std::sin(0.37 * static_cast<double>(pos * (j + 1))) * (1 + pos % 5);
        }
      };
      std::vector<double> a(dim, 0.0), b(dim, 0.0);
      AccumulateStats sa = AccumulateGradients(count, dim, grad, clip, a.data());
      AccumulateStats sb = AccumulateGradientsSerial(count, dim, grad, clip, b.data());
      EXPECT_TRUE(BitwiseEqual(a, b)) << count << " " << clip;
      EXPECT_EQ(sa.clipped, sb.clipped);
      EXPECT_EQ(sa.max_norm, sb.max_norm);
      EXPECT_EQ(sa.non_finite_position, -1);
    }
  }
}

TEST_F(KernelsTest, AccumulateGradientsClipsAndFlagsNonFinite) {
  ExampleGradient grad = [](int64_t pos, double* out) {
    out[0] = 3.0;
    out[1] = pos == 40 ? NAN : 4.0;
  };
  std::vector<double> a(2, 0.0), b(2, 0.0);
  AccumulateStats s = AccumulateGradients(50, 2, grad, 1.0, a.data());
  AccumulateStats t = AccumulateGradientsSerial(50, 2, grad, 1.0, b.data());
  EXPECT_EQ(s.non_finite_position, 40);
  EXPECT_EQ(t.non_finite_position, 40);
  EXPECT_EQ(s.max_norm, 5.0);

  std::vector<double> c(2, 0.0);
  ExampleGradient ok = [](int64_t, double* out) {
    out[0] = 3.0;
    out[1] = 4.0;
  };
  AccumulateStats u = AccumulateGradients(10, 2, ok, 1.0, c.data());
  EXPECT_EQ(u.clipped, 10);
  EXPECT_NEAR(c[0], 6.0, 1e-12);
  EXPECT_NEAR(c[1], 8.0, 1e-12);
}

TEST_F(KernelsTest, SampleScoresMatchesSerial) {
  ScoreSampler s = [](std::mt19937_64& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
  };
  for (int64_t n : {1, 4095, 4096, 4097, 50000}) {
    EXPECT_TRUE(BitwiseEqual(SampleScores(s, n, 11, 3), SampleScoresSerial(s, n, 11, 3)))
        << n;
  }
  EXPECT_FALSE(BitwiseEqual(SampleScores(s, 1000, 11, 3), SampleScores(s, 1000, 11, 4)));
}

TEST_F(KernelsTest, ConvolveDirectMatchesSerialAndDefinition) {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (size_t na : {1u, 5u, 300u}) {
    for (size_t nb : {1u, 7u, 257u}) {
      std::vector<double> a(na), b(nb);
      for (double& v : a) v = u(g);
      for (double& v : b) v = u(g);
      std::vector<double> p = ConvolveDirect(a, b);
      EXPECT_TRUE(BitwiseEqual(p, ConvolveDirectSerial(a, b)));
      ASSERT_EQ(p.size(), na + nb - 1);
      for (size_t k = 0; k < p.size(); ++k) {
        double ref = 0;
        for (size_t i = 0; i < na; ++i) {
          if (k >= i && k - i < nb) ref += a[i] * b[k - i];
        }
        EXPECT_NEAR(p[k], ref, 1e-12 * (1 + ref));
      }
    }
  }
}

}  // namespace
}  // namespace kernels
}  // namespace fdp
