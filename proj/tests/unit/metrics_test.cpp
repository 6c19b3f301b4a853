// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "videomerge/error.hpp"
#include "videomerge/frequency_mask.hpp"
#include "videomerge/metrics.hpp"

namespace videomerge {
namespace {

using testing::gaussian_tensor;

// Embeds frame f as a fixed vector chosen by the test.
class TableExtractor final : public FrameFeatureExtractor {
 public:
  explicit TableExtractor(FeatureSet rows) : rows_(std::move(rows)) {}
  FeatureVector embed(const LatentTensor&, std::size_t f) const override { return rows_.at(f); }

 private:
  FeatureSet rows_;
};

LatentTensor frames_video(const std::vector<float>& per_frame) {
  LatentTensor v({1, 1, per_frame.size(), 2, 2});
  for (std::size_t f = 0; f < per_frame.size(); ++f)
    for (float& x : v.frame(0, f)) x = per_frame[f];
  return v;
}

double flicker_oracle(const LatentTensor& v) {
  double lo = 1e300, hi = -1e300;
  for (float x : v.data()) {
    lo = std::min(lo, double(x));
    hi = std::max(hi, double(x));
  }
  if (hi == lo) return 0.0;
  const Shape& s = v.shape();
  double acc = 0.0;
  for (std::size_t f = 1; f < s.frames; ++f) {
    double d = 0.0;
    for (std::size_t b = 0; b < s.batch; ++b)
      for (std::size_t c = 0; c < s.channels; ++c)
        for (std::size_t h = 0; h < s.height; ++h)
          for (std::size_t w = 0; w < s.width; ++w)
            d += std::abs(double(v.at(b, c, f, h, w)) - v.at(b, c, f - 1, h, w));
    acc += d / double(s.slabs() * s.frame_elements());
  }
  return acc / double(s.frames - 1) / (hi - lo);
}

TEST(Flicker, Cases) {
  EXPECT_EQ(temporal_flicker(LatentTensor({1, 2, 5, 3, 3}, 4.0f)), 0.0);
  EXPECT_DOUBLE_EQ(temporal_flicker(frames_video({0, 1, 0, 1, 0, 1})), 1.0);
  for (std::size_t F : {2u, 5u, 16u}) {
    std::vector<float> ramp(F);
    for (std::size_t f = 0; f < F; ++f) ramp[f] = float(f) / float(F - 1);
    EXPECT_NEAR(temporal_flicker(frames_video(ramp)), 1.0 / double(F - 1), 1e-9);
  }
  const auto v = gaussian_tensor({2, 3, 7, 4, 5}, 1);
  EXPECT_NEAR(temporal_flicker(v), flicker_oracle(v), 1e-12);
  try {
    (void)temporal_flicker(LatentTensor({1, 1, 1, 2, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_frames);
  }
}

TEST(Flicker, OffsetInvariant) {
  auto v = gaussian_tensor({1, 2, 6, 4, 4}, 2);
  const double a = temporal_flicker(v);
  for (float& x : v.data()) x += 3.0f;
  EXPECT_NEAR(temporal_flicker(v), a, 1e-5);
}

TEST(Extractor, PatchMeansAndStd) {
  LatentTensor v({1, 1, 1, 4, 4});
  for (std::size_t h = 0; h < 4; ++h)
    for (std::size_t w = 0; w < 4; ++w) v.at(0, 0, 0, h, w) = float(h * 4 + w);
  const auto e = PatchStatsExtractor(2).embed(v, 0);
  ASSERT_EQ(e.size(), 5u);
  EXPECT_DOUBLE_EQ(e[0], (0 + 1 + 4 + 5) / 4.0);
  EXPECT_DOUBLE_EQ(e[3], (10 + 11 + 14 + 15) / 4.0);
  double var = 0.0;
  for (int i = 0; i < 16; ++i) var += (i - 7.5) * (i - 7.5);
  EXPECT_NEAR(e[4], std::sqrt(var / 16.0), 1e-12);
  EXPECT_EQ(PatchStatsExtractor().embed(LatentTensor({1, 3, 2, 8, 8}), 1).size(), 3u * 17u);
  EXPECT_THROW(PatchStatsExtractor(0), Error);
}

TEST(Cosine, Basics) {
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 0}, {0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 2}, {2, 4}), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({0, 0}, {1, 1}), 0.0);
  EXPECT_THROW(cosine_similarity({1}, {1, 2}), Error);
}

TEST(PairwiseConsistency, Cases) {
  EXPECT_NEAR(pairwise_consistency(LatentTensor({1, 1, 4, 4, 4}, 2.0f), PatchStatsExtractor()),
              1.0, 1e-12);
  const LatentTensor any({1, 1, 3, 1, 1});
  EXPECT_DOUBLE_EQ(pairwise_consistency(any, TableExtractor({{1, 0}, {0, 1}, {1, 0}})), 0.0);

  auto v = gaussian_tensor({1, 2, 9, 8, 8}, 4);
  LatentTensor rev(v.shape());
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t f = 0; f < 9; ++f) {
      auto src = v.frame(s, 8 - f);
      std::copy(src.begin(), src.end(), rev.frame(s, f).begin());
    }
  EXPECT_NEAR(pairwise_consistency(v, PatchStatsExtractor()),
              pairwise_consistency(rev, PatchStatsExtractor()), 1e-12);

  // Positive per-frame scaling of embeddings does not change cosine scores.
  FeatureSet rows{{1, 2, 3}, {2, 1, 0}, {0, 1, 1}};
  FeatureSet scaled = rows;
  for (std::size_t i = 0; i < 3; ++i)
    for (double& x : scaled[i]) x *= double(i + 1) * 2.5;
  EXPECT_NEAR(pairwise_consistency(any, TableExtractor(rows)),
              pairwise_consistency(any, TableExtractor(scaled)), 1e-12);
}

TEST(IdentityConsistency, ConstructedHalf) {
  // Frame 0, then 4 copies of it and 4 far-away frames.
  std::vector<float> frames{0.5f, 0.5f, 9.0f, 0.5f, 9.0f, 0.5f, 9.0f, 0.5f, 9.0f};
  const auto v = frames_video(frames);
  EXPECT_EQ(identity_consistency(v, PatchStatsExtractor(), 1.0), 0.5);
  EXPECT_EQ(identity_consistency(frames_video({1, 1, 1}), PatchStatsExtractor(), 1e-9), 1.0);
}

TEST(IdentityConsistency, ThresholdsAndMonotone) {
  auto v = gaussian_tensor({1, 1, 12, 8, 8}, 5);
  const PatchStatsExtractor ex;
  const auto emb = embed_frames(v, ex);
  double min_d = 1e300;
  for (std::size_t f = 1; f < emb.size(); ++f) {
    double d = 0.0;
    for (std::size_t i = 0; i < emb[0].size(); ++i) d += std::pow(emb[0][i] - emb[f][i], 2);
    min_d = std::min(min_d, std::sqrt(d));
  }
  EXPECT_EQ(identity_consistency(v, ex, 0.5 * min_d), 0.0);
  double prev = 0.0;
  for (double tau = 0.01; tau < 10.0; tau *= 1.3) {
    const double c = identity_consistency(v, ex, tau);
    EXPECT_GE(c, prev);
    EXPECT_LE(c, 1.0);
    prev = c;
  }
  EXPECT_EQ(prev, 1.0);
  for (double bad : {0.0, -1.0}) {
    try {
      (void)identity_consistency(v, ex, bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::invalid_parameter);
    }
  }
}

FeatureSet random_set(std::size_t n, std::size_t dim, std::uint64_t seed, double shift = 0.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  FeatureSet s(n, FeatureVector(dim));
  for (auto& v : s)
    for (double& x : v) x = normal(gen) + shift;
  return s;
}

TEST(Frechet, IdenticalAndSymmetric) {
  for (std::size_t dim : {1u, 3u, 8u, 16u}) {
    const auto a = random_set(40, dim, dim);
    const auto b = random_set(30, dim, dim + 100, 0.7);
    EXPECT_LT(frechet_distance(a, a), 1e-6);
    EXPECT_NEAR(frechet_distance(a, b), frechet_distance(b, a), 1e-9);
    EXPECT_GT(frechet_distance(a, b), 0.0);
  }
}

TEST(Frechet, OneDimensionalClosedForm) {
  // Sample means 0 and 1, equal sample variances.
  FeatureSet a{{-1}, {1}, {-1}, {1}};
  FeatureSet b{{0}, {2}, {0}, {2}};
  EXPECT_NEAR(frechet_distance(a, b), 1.0, 1e-6);

  std::mt19937_64 gen(77);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_set(2 + gen() % 20, 1, gen(), double(gen() % 5));
    const auto y = random_set(2 + gen() % 20, 1, gen());
    auto stats = [](const FeatureSet& s) {
      double m = 0.0;
      for (const auto& v : s) m += v[0];
      m /= double(s.size());
      double q = 0.0;
      for (const auto& v : s) q += (v[0] - m) * (v[0] - m);
      return std::pair{m, std::sqrt(q / double(s.size() - 1))};
    };
    const auto [m1, s1] = stats(x);
    const auto [m2, s2] = stats(y);
    EXPECT_NEAR(frechet_distance(x, y), (m1 - m2) * (m1 - m2) + (s1 - s2) * (s1 - s2), 1e-6);
  }
}

TEST(Frechet, Errors) {
  EXPECT_THROW(frechet_distance({{1.0}}, {{1.0}, {2.0}}), Error);
  EXPECT_THROW(frechet_distance({{1.0}, {2.0}}, {{1.0, 2.0}, {2.0, 1.0}}), Error);
}

TEST(LowFreqSimilarity, CopiedTilesScoreOne) {
  const auto layout = TileLayout::create(8, 0, 32);
  const auto tile = gaussian_tensor({1, 2, 8, 8, 8}, 6);
  LatentTensor v({1, 2, 32, 8, 8});
  for (std::size_t i = 0; i < 4; ++i) v.assign_frames(8 * i, tile);
  EXPECT_NEAR(low_freq_similarity(v, layout), 1.0, 1e-9);
}

TEST(LowFreqSimilarity, HighFrequencyJitterKeepsScoreHigh) {
  const auto layout = TileLayout::create(8, 0, 32);
  const auto tile = gaussian_tensor({1, 2, 8, 8, 8}, 7);
  LatentTensor v({1, 2, 32, 8, 8});
  for (std::size_t i = 0; i < 4; ++i) v.assign_frames(8 * i, tile);
  // Checkerboard in space and alternating sign in time: the Nyquist corner.
  const auto jitter = gaussian_tensor(v.shape(), 8);
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t f = 0; f < 32; ++f)
      for (std::size_t h = 0; h < 8; ++h)
        for (std::size_t w = 0; w < 8; ++w) {
          const float sign = ((f + h + w) % 2) ? -1.0f : 1.0f;
          v.at(0, s, f, h, w) += 0.3f * sign * std::abs(jitter.at(0, s, f, h, w));
        }
  EXPECT_GT(low_freq_similarity(v, layout), 0.9);
}

TEST(LowFreqSimilarity, IndependentNoiseNearZero) {
  const auto layout = TileLayout::create(16, 0, 128);
  const auto v = gaussian_tensor({1, 1, 128, 16, 16}, 9);
  // Cosines between independent windows are uncorrelated, each with spread
  // 1/sqrt(dof) for the effective number of low-pass components.
  const double sim = low_freq_similarity(v, layout);
  const auto mask = butterworth_mask(16, 16, 16);
  double g2 = 0.0, g4 = 0.0;
  for (double g : mask.gains()) {
    g2 += g * g;
    g4 += g * g * g * g;
  }
  const double dof = g2 * g2 / g4;
  const double se = 1.0 / std::sqrt(dof) / std::sqrt(28.0);
  EXPECT_LT(std::abs(sim), 4.0 * se) << "se " << se;
}

TEST(LowFreqSimilarity, Errors) {
  try {
    (void)low_freq_similarity(LatentTensor({1, 1, 20, 4, 4}), TileLayout::create(16, 12, 20));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::insufficient_windows);
  }
  EXPECT_THROW(low_freq_similarity(LatentTensor({1, 1, 24, 4, 4}), TileLayout::create(8, 0, 32)),
               Error);
  // n=16, o=12 needs tiles four apart: 25 tiles give 21+20+...+1 pairs.
  EXPECT_NO_THROW(low_freq_similarity(gaussian_tensor({1, 1, 112, 4, 4}, 1),
                                      TileLayout::create(16, 12, 112)));
}

}  // namespace
}  // namespace videomerge
