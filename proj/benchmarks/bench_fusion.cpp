// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "videomerge/fusion.hpp"
#include "videomerge/rng.hpp"

namespace {

using namespace videomerge;

void BM_Fuse(benchmark::State& state) {
  const auto overlap = static_cast<std::size_t>(state.range(0));
  const auto layout = TileLayout::create(16, overlap, 112);
  SeededRng rng(1, "bench");
  std::vector<TilePrediction> preds;
  for (std::size_t i = 0; i < layout.tile_count(); ++i) {
    preds.push_back({i, randn({1, 4, 16, 16, 16}, rng)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fuse(preds, layout));
  }
  state.counters["tiles"] = static_cast<double>(layout.tile_count());
}
BENCHMARK(BM_Fuse)->Arg(0)->Arg(12);

void BM_WeightTable(benchmark::State& state) {
  const auto layout = TileLayout::create(16, 12, 1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weight_table(layout));
  }
}
BENCHMARK(BM_WeightTable);

}  // namespace
