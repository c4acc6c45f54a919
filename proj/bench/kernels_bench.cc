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
#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "featuredp/kernels/batch_gradient.h"
#include "featuredp/kernels/convolution.h"
#include "featuredp/kernels/score_sampling.h"

namespace fdp {
namespace kernels {
namespace {

std::vector<double> RandomVector(size_t n, uint64_t seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(g);
  return v;
}

template <bool kSerial>
void BM_ConvolveDirect(benchmark::State& state) {
  const auto a = RandomVector(state.range(0), 1);
  const auto b = RandomVector(state.range(0), 2);
  for (auto _ : state) {
    auto out = kSerial ? ConvolveDirectSerial(a, b) : ConvolveDirect(a, b);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_ConvolveDirect<true>)->Name("ConvolveDirect/serial")->Arg(512)->Arg(4096);
BENCHMARK(BM_ConvolveDirect<false>)->Name("ConvolveDirect/openmp")->Arg(512)->Arg(4096);

template <bool kSerial>
void BM_SampleScores(benchmark::State& state) {
  ScoreSampler sampler = [](std::mt19937_64& g) {
    return std::normal_distribution<double>(0.0, 1.0)(g);
  };
  for (auto _ : state) {
    auto out = kSerial ? SampleScoresSerial(sampler, state.range(0), 1, 2)
                       : SampleScores(sampler, state.range(0), 1, 2);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleScores<true>)->Name("SampleScores/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_SampleScores<false>)->Name("SampleScores/openmp")->Arg(1 << 16)->Arg(1 << 20);

template <bool kSerial>
void BM_AccumulateGradients(benchmark::State& state) {
  const int64_t count = state.range(0), dim = 600;
  const auto features = RandomVector(count * dim, 3);
  ExampleGradient grad = [&](int64_t pos, double* out) {
    const double* x = features.data() + pos * dim;
    for (int64_t j = 0; j < dim; ++j) out[j] = std::tanh(x[j]) * x[j];
  };
  std::vector<double> out(dim);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    if (kSerial) {
      AccumulateGradientsSerial(count, dim, grad, 1.0, out.data());
    } else {
      AccumulateGradients(count, dim, grad, 1.0, out.data());
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_AccumulateGradients<true>)
    ->Name("AccumulateGradients/serial")->Arg(256)->Arg(4096);
BENCHMARK(BM_AccumulateGradients<false>)
    ->Name("AccumulateGradients/openmp")->Arg(256)->Arg(4096);

}  // namespace
}  // namespace kernels
}  // namespace fdp

BENCHMARK_MAIN();
