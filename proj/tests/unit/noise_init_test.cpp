// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "support/oracles.hpp"
#include "videomerge/error.hpp"
#include "videomerge/fft.hpp"
#include "videomerge/noise_init.hpp"
#include "videomerge/rng.hpp"

namespace videomerge {
namespace {

using testing::gaussian_tensor;
using testing::matching_frame;

NoiseInitConfig small_config(std::size_t t, std::size_t o, std::size_t n,
                             double w_max, std::uint64_t seed = 0) {
  NoiseInitConfig cfg;
  cfg.channels = 2;
  cfg.height = 4;
  cfg.width = 4;
  cfg.tile_frames = t;
  cfg.overlap = o;
  cfg.replication = n;
  cfg.max_merge = w_max;
  cfg.seed = seed;
  return cfg;
}

std::vector<long> source_indices(const LatentTensor& x, const LatentTensor& src) {
  std::vector<long> idx(x.shape().frames);
  for (std::size_t f = 0; f < idx.size(); ++f) idx[f] = matching_frame(x, f, src);
  return idx;
}

TEST(NoiseInitConfig, Validation) {
  auto cfg = small_config(16, 12, 7, 0.1);
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_EQ(cfg.long_frames(), 112u);
  cfg.overlap = 16;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small_config(16, 12, 0, 0.1);
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small_config(16, 12, 7, 1.5);
  EXPECT_THROW(cfg.validate(), Error);
  cfg = small_config(16, 12, 7, 0.1);
  cfg.filter.temporal_cutoff = 0.7;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(ReplicateNoise, Definition) {
  const auto s = gaussian_tensor({1, 2, 4, 2, 2}, 1);
  EXPECT_TRUE(testing::bit_equal(replicate_noise(s, 1), s));
  const auto r = replicate_noise(s, 3);
  ASSERT_EQ(r.shape().frames, 12u);
  for (std::size_t f = 0; f < 12; ++f) EXPECT_EQ(matching_frame(r, f, s), long(f % 4));
  try {
    (void)replicate_noise(s, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_parameter);
  }
}

TEST(ShuffleStrides, EachStrideIsPermutationOfItsSourceWindow) {
  for (auto [t, o, n] : {std::tuple{16u, 12u, 7u}, std::tuple{8u, 3u, 5u},
                         std::tuple{6u, 0u, 4u}, std::tuple{5u, 4u, 6u}}) {
    const auto s = gaussian_tensor({1, 1, t, 2, 2}, t * 31 + o);
    SeededRng rng(3, "shuffle");
    const auto out = shuffle_strides(replicate_noise(s, n), t, o, rng);
    const auto idx = source_indices(out, s);
    const std::size_t stride = t - o, L = n * t;
    std::size_t idx_pos = t;
    for (; idx_pos + stride <= L; idx_pos += stride) {
      std::vector<long> written(idx.begin() + idx_pos, idx.begin() + idx_pos + stride);
      std::vector<long> read(idx.begin() + (idx_pos - t), idx.begin() + (idx_pos - o));
      std::sort(written.begin(), written.end());
      std::sort(read.begin(), read.end());
      EXPECT_EQ(written, read) << "t=" << t << " o=" << o << " idx=" << idx_pos;
    }
    // Frames past the last full stride keep their replicated value.
    for (std::size_t f = idx_pos; f < L; ++f) EXPECT_EQ(idx[f], long(f % t));
    for (std::size_t f = 0; f < t; ++f) EXPECT_EQ(idx[f], long(f));
  }
}

TEST(ShuffleStrides, OverlapOneLessThanTileCopiesSingleFrames) {
  const std::size_t t = 4;
  const auto s = gaussian_tensor({1, 1, t, 2, 2}, 9);
  SeededRng rng(0, "shuffle");
  const auto out = shuffle_strides(replicate_noise(s, 3), t, t - 1, rng);
  // Each new frame copies the frame t positions back.
  for (std::size_t f = t; f < 3 * t; ++f)
    EXPECT_EQ(matching_frame(out, f, s), matching_frame(out, f - t, s));
}

TEST(ShuffleStrides, RejectsOverlapNotBelowTile) {
  SeededRng rng(0, "shuffle");
  try {
    (void)shuffle_strides(LatentTensor({1, 1, 8, 1, 1}), 4, 4, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_parameter);
  }
}

TEST(PreBlendNoise, CopyPropertyAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto cfg = small_config(16, 12, 7, 0.1, seed);
    const auto pre = pre_blend_noise(cfg);
    ASSERT_EQ(pre.long_noise.shape().frames, 112u);
    for (std::size_t f = 0; f < 112; ++f)
      EXPECT_GE(matching_frame(pre.long_noise, f, pre.short_noise), 0);
    EXPECT_TRUE(testing::bit_equal(pre.long_noise, pre_blend_noise(cfg).long_noise));
  }
}

TEST(PreBlendNoise, StrideAlignedWindowsArePermutationEquivalent) {
  for (auto [t, o, n] : {std::tuple{16u, 12u, 7u}, std::tuple{8u, 4u, 4u},
                         std::tuple{6u, 3u, 5u}, std::tuple{4u, 0u, 5u}}) {
    const auto cfg = small_config(t, o, n, 0.0, 17);
    const auto pre = pre_blend_noise(cfg);
    const auto idx = source_indices(pre.long_noise, pre.short_noise);
    const std::size_t stride = t - o;
    std::vector<long> first(t);
    std::iota(first.begin(), first.end(), 0L);
    for (std::size_t b = 0; b + t <= n * t; b += stride) {
      std::vector<long> window(idx.begin() + b, idx.begin() + b + t);
      std::sort(window.begin(), window.end());
      EXPECT_EQ(window, first) << "t=" << t << " o=" << o << " offset " << b;
    }
  }
}

TEST(PreBlendNoise, ShufflePatternIndependentOfMaxMerge) {
  const auto a = pre_blend_noise(small_config(8, 4, 4, 0.0, 5));
  const auto b = pre_blend_noise(small_config(8, 4, 4, 0.3, 5));
  EXPECT_TRUE(testing::bit_equal(a.long_noise, b.long_noise));
}

TEST(InitLongNoise, DisjointTilesPermuteFirstTileExactly) {
  // o=0, n=2, t=4, no fresh noise: frames 4..7 are frames 0..3 in some order.
  auto cfg = small_config(4, 0, 2, 0.0, 8);
  const auto pre = pre_blend_noise(cfg);
  const auto out = init_long_noise(cfg);
  ASSERT_EQ(out.shape().frames, 8u);
  EXPECT_LT(max_abs_diff(out, pre.long_noise), 1e-5);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  int matches = 0;
  do {
    bool ok = true;
    for (std::size_t j = 0; j < 4 && ok; ++j)
      for (std::size_t s = 0; s < 2 && ok; ++s)
        ok = testing::frame_copy(pre.long_noise, s, 4 + j) ==
             testing::frame_copy(pre.short_noise, s, perm[j]);
    matches += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(matches, 1);
}

TEST(InitLongNoise, DefaultGeometry) {
  NoiseInitConfig cfg;
  const auto out = init_long_noise(cfg);
  EXPECT_EQ(out.shape(), (Shape{1, 4, 112, 8, 8}));
  EXPECT_TRUE(out.all_finite());
  EXPECT_TRUE(testing::bit_equal(out, init_long_noise(cfg)));
  cfg.seed = 1;
  EXPECT_FALSE(testing::bit_equal(out, init_long_noise(cfg)));
}

TEST(BlendHighFrequency, ZeroMergeIsIdentity) {
  for (auto mode : {BlendMode::time_ramp, BlendMode::literal_frequency_ramp}) {
    auto cfg = small_config(8, 4, 3, 0.0);
    cfg.blend_mode = mode;
    const auto x = gaussian_tensor(cfg.long_shape(), 2);
    SeededRng rng(0, "fresh");
    EXPECT_LT(max_abs_diff(blend_high_frequency(x, cfg, rng), x), 1e-5);
  }
}

TEST(BlendHighFrequency, EachModeReproducible) {
  for (auto mode : {BlendMode::time_ramp, BlendMode::literal_frequency_ramp}) {
    for (bool literal_order : {false, true}) {
      auto cfg = small_config(8, 4, 3, 0.1, 4);
      cfg.blend_mode = mode;
      cfg.literal_weight_order = literal_order;
      EXPECT_TRUE(testing::bit_equal(init_long_noise(cfg), init_long_noise(cfg)));
    }
  }
  auto a = small_config(8, 4, 3, 0.1, 4);
  auto b = a;
  b.blend_mode = BlendMode::literal_frequency_ramp;
  EXPECT_FALSE(testing::bit_equal(init_long_noise(a), init_long_noise(b)));
}

TEST(MergeHigh, Weights) {
  EXPECT_DOUBLE_EQ(merge_high(2.0, 5.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(merge_high(2.0, 5.0, 1.0), 5.0);
  EXPECT_NEAR(merge_high(1.0, 1.0, 0.5), std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(merge_ramp(0, 112, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(merge_ramp(111, 112, 0.1), 0.1);
  EXPECT_DOUBLE_EQ(merge_ramp(0, 1, 0.1), 0.0);
}

TEST(MergeHigh, VariancePreservedForIndependentNormals) {
  std::mt19937_64 gen(1234);
  std::normal_distribution<double> normal;
  const std::size_t n = 1'000'000;
  for (double w : {0.0, 0.05, 0.1, 0.5}) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = merge_high(normal(gen), normal(gen), w);
      sum += v;
      sq += v * v;
    }
    const double mean = sum / n;
    EXPECT_NEAR(sq / n - mean * mean, 1.0, 0.02) << "w=" << w;
  }
}

TEST(BlendHighFrequency, VarianceOfLargeTensorPreserved) {
  NoiseInitConfig cfg;
  cfg.height = 48;
  cfg.width = 48;
  const auto pre = pre_blend_noise(cfg);
  ASSERT_GE(pre.long_noise.size(), 1'000'000u);
  SeededRng rng(cfg.seed, "fresh");
  const auto out = blend_high_frequency(pre.long_noise, cfg, rng);
  auto variance = [](const LatentTensor& x) {
    double s = 0.0, q = 0.0;
    for (float v : x.data()) {
      s += v;
      q += double(v) * v;
    }
    const double m = s / x.size();
    return q / x.size() - m * m;
  };
  EXPECT_NEAR(variance(out) / variance(pre.long_noise), 1.0, 0.03);
}

// Time-ramp blend rebuilt from direct DFTs: out = Lo(x) + ((1-w)Hi(x) + w Hi(z)) / d.
TEST(BlendHighFrequency, TimeRampMatchesDirectOracle) {
  auto cfg = small_config(4, 2, 2, 0.4, 6);
  cfg.channels = 1;
  const Shape s = cfg.long_shape();
  const auto x = gaussian_tensor(s, 31);
  SeededRng rng(cfg.seed, "fresh");
  const auto out = blend_high_frequency(x, cfg, rng);

  SeededRng replay(cfg.seed, "fresh");
  const auto z = randn(s, replay);

  auto freq = [](std::size_t k, std::size_t n) { return double(std::min(k, n - k)) / n; };
  const std::size_t F = s.frames, H = s.height, W = s.width;
  std::vector<double> gain(F * H * W);
  for (std::size_t t = 0; t < F; ++t)
    for (std::size_t h = 0; h < H; ++h)
      for (std::size_t w = 0; w < W; ++w)
        gain[(t * H + h) * W + w] =
            testing::butterworth_oracle(freq(t, F), 0.25, 4) *
            testing::butterworth_oracle(std::hypot(freq(h, H), freq(w, W)), 0.25, 4);

  auto parts = [&](const LatentTensor& v, bool low) {
    auto X = testing::naive_dft3(v);
    for (std::size_t i = 0; i < X.size(); ++i) X[i] *= low ? gain[i] : 1.0 - gain[i];
    auto back = testing::naive_dft3(X, s, +1, 1.0 / double(F * H * W));
    std::vector<double> re(back.size());
    for (std::size_t i = 0; i < re.size(); ++i) re[i] = back[i].real();
    return re;
  };
  const auto lo = parts(x, true), hi = parts(x, false), hz = parts(z, false);
  const std::size_t fe = H * W;
  for (std::size_t f = 0; f < F; ++f) {
    const double w = 0.4 * double(f) / double(F - 1);
    const double d = std::sqrt(w * w + (1 - w) * (1 - w));
    for (std::size_t e = 0; e < fe; ++e) {
      const std::size_t i = f * fe + e;
      const double want = lo[i] + ((1 - w) * hi[i] + w * hz[i]) / d;
      EXPECT_NEAR(out.data()[i], want, 1e-5) << "frame " << f;
    }
  }
}

// The blend keeps the pre-blend low component as an exact additive term, but
// the Butterworth mask is soft, so re-filtering the output does not return the
// pre-blend low part bit-for-bit: the mixed high band leaks through the mask.
TEST(BlendHighFrequency, LowComponentIsAdditiveTerm) {
  NoiseInitConfig cfg;
  const auto pre = pre_blend_noise(cfg);
  SeededRng rng(cfg.seed, "fresh");
  const auto out = blend_high_frequency(pre.long_noise, cfg, rng);
  const auto mask = butterworth_mask(112, 8, 8);
  const auto lo_pre = ifft3(split_frequency(pre.long_noise, mask).low);
  const auto hi_pre = ifft3(split_frequency(pre.long_noise, mask).high);

  // Frame 0 carries w = 0, so out = Lo + Hi there.
  for (std::size_t s = 0; s < 4; ++s) {
    auto o = out.frame(s, 0);
    auto l = lo_pre.frame(s, 0);
    auto h = hi_pre.frame(s, 0);
    for (std::size_t e = 0; e < o.size(); ++e) EXPECT_NEAR(o[e], l[e] + h[e], 1e-5);
  }
  // Re-filtered low part stays close to the pre-blend low part relative to its scale.
  const auto lo_out = ifft3(split_frequency(out, mask).low);
  double scale = 0.0;
  for (float v : lo_pre.data()) scale = std::max(scale, double(std::abs(v)));
  EXPECT_LT(max_abs_diff(lo_out, lo_pre) / scale, 0.1);
}

}  // namespace
}  // namespace videomerge
