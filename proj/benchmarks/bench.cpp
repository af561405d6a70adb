// Copyright 2026 The aisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <vector>

#include "aisim/aisim.hpp"

using namespace aisim;

namespace {

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto cols = static_cast<std::size_t>(state.range(1));
  RngStream rng(1);
  const ComplexMatrix a = sample_complex_gaussian(n, n, 1.0, rng);
  const ComplexMatrix b = sample_complex_gaussian(n, cols, 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * cols));
}
BENCHMARK(BM_Matmul)->Args({14, 28 * 64})->Args({16, 28 * 64})->Args({64, 256});

void BM_Pseudoinverse(benchmark::State& state) {
  RngStream rng(2);
  const ComplexMatrix g = sample_complex_gaussian(16, static_cast<std::size_t>(state.range(0)), 1.0, rng);
  for (auto _ : state) benchmark::DoNotOptimize(pseudoinverse(g, 1e-12));
}
BENCHMARK(BM_Pseudoinverse)->Arg(4)->Arg(16);

void BM_Rapp(benchmark::State& state) {
  RngStream rng(3);
  const ComplexMatrix x = sample_complex_gaussian(14, 28 * 64, 1.0, rng);
  const RappParams p;
  for (auto _ : state) benchmark::DoNotOptimize(activation_apply(x, ActivationMode::RappAmplitude, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_Rapp);

struct Batch {
  ExperimentConfig config;
  FixedPropagation fixed;
  ModelParams params;
  ComplexMatrix input;
  std::vector<int> labels;
  std::size_t size;

  Batch(Scheme scheme, std::size_t batch) : size(batch) {
    config.scheme = scheme;
    fixed = build_propagation(config);
    SeededRng seeded(1);
    RngStream init = seeded.stream("init");
    params = ModelParams::initialize(config, init);
    RngStream px = seeded.stream("pixels");
    std::vector<double> pixels(config.pixels() * batch);
    for (double& v : pixels) v = px.uniform();
    input = pack_batch(pixels, batch, config);
    for (std::size_t b = 0; b < batch; ++b) labels.push_back(static_cast<int>(b % config.num_classes));
  }
};

void BM_ForwardBatch(benchmark::State& state) {
  const Batch b(static_cast<Scheme>(state.range(0)), 64);
  SeededRng seeded(2);
  RngStream ch = seeded.stream("channel");
  RngStream nz = seeded.stream("noise");
  ForwardCache cache;
  for (auto _ : state) {
    Realization r = draw_realization(b.config, b.size, ch, nz);
    benchmark::DoNotOptimize(forward_batch(b.input, b.size, b.params, b.fixed, b.config, std::move(r), cache));
  }
  state.SetLabel(std::string(to_string(b.config.scheme)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.size));
}
BENCHMARK(BM_ForwardBatch)
    ->Arg(static_cast<int>(Scheme::RelayNonlinear))
    ->Arg(static_cast<int>(Scheme::NoOtaNonlinear));

void BM_ForwardBackward(benchmark::State& state) {
  const Batch b(Scheme::RelayNonlinear, 64);
  SeededRng seeded(2);
  RngStream ch = seeded.stream("channel");
  RngStream nz = seeded.stream("noise");
  ForwardCache cache;
  for (auto _ : state) {
    Realization r = draw_realization(b.config, b.size, ch, nz);
    forward_batch(b.input, b.size, b.params, b.fixed, b.config, std::move(r), cache);
    benchmark::DoNotOptimize(backward(cache, b.labels, b.params, b.fixed, b.config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(b.size));
}
BENCHMARK(BM_ForwardBackward);

}  // namespace

BENCHMARK_MAIN();
