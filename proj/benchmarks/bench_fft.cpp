// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "videomerge/fft.hpp"
#include "videomerge/frequency_mask.hpp"
#include "videomerge/rng.hpp"

namespace {

using namespace videomerge;

void BM_Fft3RoundTrip(benchmark::State& state) {
  const auto f = static_cast<std::size_t>(state.range(0));
  SeededRng rng(0, "bench");
  const LatentTensor x = randn({1, 4, f, 16, 16}, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ifft3(fft3(x)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_Fft3RoundTrip)->Arg(16)->Arg(112);

void BM_SplitFrequency(benchmark::State& state) {
  SeededRng rng(0, "bench");
  const LatentTensor x = randn({1, 4, 112, 16, 16}, rng);
  const FrequencyMask mask = butterworth_mask(112, 16, 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(split_frequency(x, mask));
  }
}
BENCHMARK(BM_SplitFrequency);

}  // namespace
