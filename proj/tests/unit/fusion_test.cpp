// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "support/oracles.hpp"
#include "videomerge/error.hpp"
#include "videomerge/fusion.hpp"

namespace videomerge {
namespace {

std::vector<TilePrediction> random_predictions(const TileLayout& layout,
                                               const Shape& tile_shape,
                                               std::uint64_t seed) {
  std::vector<TilePrediction> preds;
  for (std::size_t i = 0; i < layout.tile_count(); ++i)
    preds.push_back({i, testing::uniform_tensor(tile_shape, seed * 1000 + i)});
  return preds;
}

std::vector<LatentTensor> values(const std::vector<TilePrediction>& preds) {
  std::vector<LatentTensor> v;
  for (const auto& p : preds) v.push_back(p.value);
  return v;
}

TEST(TileLayout, Geometry) {
  const auto l = TileLayout::create(16, 12, 112);
  EXPECT_EQ(l.stride(), 4u);
  EXPECT_EQ(l.tile_count(), 25u);
  EXPECT_EQ(l.tile_begin(24) + 16, 112u);
  EXPECT_EQ(TileLayout::create(16, 0, 64).tile_count(), 4u);
  EXPECT_EQ(TileLayout::create(16, 12, 16).tile_count(), 1u);
}

TEST(TileLayout, RejectsInvalid) {
  EXPECT_THROW(TileLayout::create(0, 0, 8), Error);
  EXPECT_THROW(TileLayout::create(8, 8, 16), Error);
  EXPECT_THROW(TileLayout::create(8, 2, 17), Error);  // (L - n) % stride != 0
  EXPECT_THROW(TileLayout::create(8, 2, 4), Error);   // shorter than a tile
}

TEST(CoveringTiles, MatchesIntervalEnumeration) {
  for (auto [n, o, L] : {std::tuple{16u, 12u, 112u}, std::tuple{8u, 3u, 38u},
                         std::tuple{16u, 0u, 64u}, std::tuple{7u, 6u, 19u}}) {
    const auto layout = TileLayout::create(n, o, L);
    const std::size_t stride = n - o, m = (L - n) / stride + 1;
    for (std::size_t t = 0; t < L; ++t) {
      std::vector<std::size_t> want;
      for (std::size_t i = 0; i < m; ++i)
        if (i * stride <= t && t < i * stride + n) want.push_back(i);
      EXPECT_EQ(covering_tiles(t, layout), want) << "t=" << t;
      const auto r = covering_range(t, layout);
      EXPECT_EQ(r.first, want.front());
      EXPECT_EQ(r.last, want.back());
      EXPECT_EQ(r.count(), want.size());
    }
  }
}

TEST(CoveringTiles, KnownFrames) {
  const auto l = TileLayout::create(16, 12, 112);
  EXPECT_EQ(covering_tiles(0, l), (std::vector<std::size_t>{0}));
  EXPECT_EQ(covering_tiles(20, l), (std::vector<std::size_t>{2, 3, 4, 5}));
  const auto d = TileLayout::create(16, 0, 64);
  for (std::size_t t = 0; t < 64; ++t)
    EXPECT_EQ(covering_tiles(t, d), (std::vector<std::size_t>{t / 16}));
  try {
    (void)covering_tiles(112, l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::index_out_of_range);
  }
}

TEST(Omega, Values) {
  EXPECT_NEAR(omega(0, 16), 0.098017, 1e-6);
  EXPECT_NEAR(omega(8, 16), 0.995185, 1e-6);
  for (std::size_t n : {1u, 2u, 7u, 16u, 31u}) {
    for (std::size_t s = 0; s < n; ++s) {
      EXPECT_GT(omega(s, n), 0.0);
      EXPECT_NEAR(omega(s, n), omega(n - 1 - s, n), 1e-12);
      EXPECT_NEAR(omega(s, n), testing::sine_weight(s, n), 1e-15);
    }
  }
  try {
    (void)omega(16, 16);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::index_out_of_range);
  }
}

TEST(WeightTable, PartitionOfUnitySweep) {
  for (std::size_t n = 1; n <= 32; ++n) {
    for (std::size_t o = 0; o < n; ++o) {
      const std::size_t stride = n - o;
      for (std::size_t L = n; L <= 256; L += stride) {
        const auto table = weight_table(TileLayout::create(n, o, L));
        ASSERT_EQ(table.size(), L);
        for (const auto& row : table) {
          double sum = 0.0;
          for (const auto& e : row) sum += e.weight;
          ASSERT_NEAR(sum, 1.0, 1e-9) << n << "," << o << "," << L;
        }
      }
    }
  }
}

TEST(WeightTable, Shapes) {
  const auto table = weight_table(TileLayout::create(16, 12, 112));
  EXPECT_EQ(table[56].size(), 4u);  // overlap 12 > 16/2
  EXPECT_EQ(table[0].size(), 1u);
  EXPECT_EQ(table[0][0].weight, 1.0);
  for (const auto& row : weight_table(TileLayout::create(16, 0, 48))) {
    ASSERT_EQ(row.size(), 1u);
    EXPECT_EQ(row[0].weight, 1.0);
  }
}

TEST(WeightTable, MatchesSineRatio) {
  const std::size_t n = 16, o = 12;
  const auto table = weight_table(TileLayout::create(n, o, 112));
  for (std::size_t t = 0; t < 112; ++t) {
    double den = 0.0;
    for (const auto& e : table[t]) den += testing::sine_weight(t - e.tile * 4, n);
    for (const auto& e : table[t])
      EXPECT_NEAR(e.weight, testing::sine_weight(t - e.tile * 4, n) / den, 1e-15);
  }
}

TEST(Fuse, MatchesBruteForceOracle) {
  std::mt19937_64 gen(7);
  int instances = 0;
  for (std::size_t n : {8u, 16u}) {
    for (std::size_t o : {0u, 2u, 4u, 12u, 15u}) {
      if (o >= n) continue;
      for (std::size_t tiles : {1u, 2u, 5u, 9u}) {
        const std::size_t L = n + (tiles - 1) * (n - o);
        const auto layout = TileLayout::create(n, o, L);
        const Shape ts{1, 2, n, 3, 2};
        const auto preds = random_predictions(layout, ts, gen());
        const auto got = fuse(preds, layout);
        const auto want = testing::brute_force_fuse(values(preds), n, o, L);
        EXPECT_LT(max_abs_diff(got, want), 1e-6);
        ++instances;
      }
    }
  }
  EXPECT_GT(instances, 20);
}

TEST(Fuse, AgreeingTilesReturnSharedValue) {
  const auto layout = TileLayout::create(16, 12, 112);
  std::vector<TilePrediction> preds;
  for (std::size_t i = 0; i < layout.tile_count(); ++i)
    preds.push_back({i, LatentTensor({1, 1, 16, 2, 2}, 0.3f)});
  const auto fused = fuse(preds, layout);
  for (float v : fused.data()) EXPECT_NEAR(v, 0.3f, 1e-6);

  // Tiles that are windows of one global video agree at every frame.
  const auto global = testing::uniform_tensor({1, 2, 112, 2, 2}, 4);
  preds.clear();
  for (std::size_t i = 0; i < layout.tile_count(); ++i)
    preds.push_back({i, global.slice_frames(layout.tile_begin(i), 16)});
  EXPECT_LT(max_abs_diff(fuse(preds, layout), global), 1e-6);
}

TEST(Fuse, BoundaryFramesAreSingleCoveredBitwise) {
  const auto layout = TileLayout::create(16, 12, 112);
  const auto preds = random_predictions(layout, {1, 2, 16, 3, 3}, 3);
  const auto out = fuse(preds, layout);
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t f = 0; f < 4; ++f) {
      EXPECT_EQ(testing::frame_copy(out, s, f), testing::frame_copy(preds[0].value, s, f));
      EXPECT_EQ(testing::frame_copy(out, s, 108 + f),
                testing::frame_copy(preds[24].value, s, 12 + f));
    }
  }
}

TEST(Fuse, PermutationInvariantBitwise) {
  const auto layout = TileLayout::create(8, 5, 38);
  auto preds = random_predictions(layout, {1, 1, 8, 4, 4}, 9);
  const auto ref = fuse(preds, layout);
  std::mt19937_64 gen(1);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(preds.begin(), preds.end(), gen);
    EXPECT_TRUE(testing::bit_equal(fuse(preds, layout), ref));
  }
}

TEST(Fuse, Errors) {
  const auto layout = TileLayout::create(8, 4, 16);
  auto preds = random_predictions(layout, {1, 1, 8, 2, 2}, 1);
  auto missing = preds;
  missing.pop_back();
  try {
    (void)fuse(missing, layout);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::incomplete_predictions);
  }
  auto dup = preds;
  dup.push_back(preds[0]);
  EXPECT_THROW((void)fuse(dup, layout), Error);
  auto bad = preds;
  bad[1].value = LatentTensor({1, 1, 8, 2, 3});
  try {
    (void)fuse(bad, layout);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_shape);
  }
}

TEST(FusionAccumulator, RequiresAscendingOrder) {
  const auto layout = TileLayout::create(8, 4, 16);
  FusionAccumulator acc(layout, {1, 1, 8, 2, 2});
  EXPECT_THROW(acc.add(1, LatentTensor({1, 1, 8, 2, 2})), Error);
  acc.add(0, LatentTensor({1, 1, 8, 2, 2}));
  EXPECT_EQ(acc.next_tile(), 1u);
  EXPECT_FALSE(acc.complete());
  try {
    (void)acc.finish();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::incomplete_predictions);
  }
}

}  // namespace
}  // namespace videomerge
