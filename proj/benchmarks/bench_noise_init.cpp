// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "videomerge/noise_init.hpp"

namespace {

using namespace videomerge;

void BM_InitLongNoise(benchmark::State& state) {
  NoiseInitConfig cfg;
  cfg.height = static_cast<std::size_t>(state.range(0));
  cfg.width = cfg.height;
  cfg.blend_mode = state.range(1) ? BlendMode::literal_frequency_ramp
                                  : BlendMode::time_ramp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(init_long_noise(cfg));
  }
}
BENCHMARK(BM_InitLongNoise)
    ->Args({8, 0})
    ->Args({16, 0})
    ->Args({16, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace
