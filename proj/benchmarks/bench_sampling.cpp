// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "videomerge/denoisers.hpp"
#include "videomerge/rng.hpp"
#include "videomerge/sampling.hpp"

namespace {

using namespace videomerge;

// Arg 0: tiles in flight (0 = sequential).
void BM_DenoiseStepTiled(benchmark::State& state) {
  const auto in_flight = static_cast<std::size_t>(state.range(0));
  const auto layout = TileLayout::create(16, 12, 112);
  SeededRng rng(2, "bench");
  const LatentTensor x = randn({1, 4, 112, 16, 16}, rng);
  const PerturbedOracle denoiser(randn(x.shape(), rng), 0.5, 0);
  const TileExecution exec{in_flight > 0, in_flight};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        denoise_step_tiled(x, 0.5, 0.45, denoiser, layout, {}, exec));
  }
}
BENCHMARK(BM_DenoiseStepTiled)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
