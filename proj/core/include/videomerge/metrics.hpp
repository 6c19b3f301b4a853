// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "videomerge/frequency_mask.hpp"
#include "videomerge/fusion.hpp"
#include "videomerge/tensor.hpp"

namespace videomerge {

using FeatureVector = std::vector<double>;
using FeatureSet = std::vector<FeatureVector>;

/// Maps one frame (every batch/channel plane at a frame index) to a
/// fixed-length feature vector. Stands in for DINO/CLIP/face embedders.
class FrameFeatureExtractor {
 public:
  virtual ~FrameFeatureExtractor() = default;
  virtual FeatureVector embed(const LatentTensor& video,
                              std::size_t frame) const = 0;
};

/// Per (batch, channel) plane: means of a 4x4 grid of patches followed by
/// the plane's standard deviation. The grid shrinks to the plane extent
/// when a side is shorter than 4.
class PatchStatsExtractor final : public FrameFeatureExtractor {
 public:
  explicit PatchStatsExtractor(std::size_t grid = 4);
  FeatureVector embed(const LatentTensor& video,
                      std::size_t frame) const override;

 private:
  std::size_t grid_;
};

/// Embeddings of every frame, in order.
FeatureSet embed_frames(const LatentTensor& video,
                        const FrameFeatureExtractor& extractor);

/// Cosine similarity; 0 if either vector is zero.
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);

/// Mean over consecutive frame pairs of the mean absolute difference,
/// divided by the video's value range (0 for a constant video).
double temporal_flicker(const LatentTensor& video);

/// Mean cosine similarity of consecutive frame embeddings.
double pairwise_consistency(const LatentTensor& video,
                            const FrameFeatureExtractor& extractor);

/// Fraction of frames 1..F-1 whose embedding lies within L2 distance tau of
/// frame 0's embedding.
double identity_consistency(const LatentTensor& video,
                            const FrameFeatureExtractor& extractor, double tau);

/// Frechet distance between Gaussian fits of two feature sets:
/// |mu_a - mu_b|^2 + tr(S_a + S_b - 2 (S_a S_b)^(1/2)).
double frechet_distance(const FeatureSet& a, const FeatureSet& b);

/// Mean cosine similarity between the low-frequency components of all pairs
/// of non-overlapping layout tiles.
double low_freq_similarity(const LatentTensor& video, const TileLayout& layout,
                           const ButterworthParams& filter = {});

struct MetricReport {
  std::map<std::string, double> values;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::map<std::string, std::string> provenance;
};

}  // namespace videomerge
