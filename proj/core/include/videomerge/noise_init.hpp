// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>

#include "videomerge/frequency_mask.hpp"
#include "videomerge/rng.hpp"
#include "videomerge/tensor.hpp"

namespace videomerge {

/// Where the merge ramp is applied when mixing in fresh high-frequency noise.
enum class BlendMode {
  /// Ramp indexed by time frame, applied to inverse-transformed high parts.
  time_ramp,
  /// Ramp indexed by the temporal-frequency bin of the complex high parts,
  /// followed by a single inverse transform (real part kept).
  literal_frequency_ramp,
};

struct NoiseInitConfig {
  // Latent extents of the short noise other than time.
  std::size_t batch = 1;
  std::size_t channels = 4;
  std::size_t height = 8;
  std::size_t width = 8;

  std::size_t tile_frames = 16;
  std::size_t overlap = 12;
  std::size_t replication = 7;
  /// Final weight of the fresh noise's high band; ramps up from 0.
  double max_merge = 0.1;
  ButterworthParams filter{};
  BlendMode blend_mode = BlendMode::time_ramp;
  /// Put the ramped weight on the original high band and 1-w on the fresh
  /// one, the reverse of the default. Kept for comparison only.
  bool literal_weight_order = false;
  std::uint64_t seed = 0;

  std::size_t long_frames() const noexcept { return replication * tile_frames; }
  Shape short_shape() const noexcept {
    return {batch, channels, tile_frames, height, width};
  }
  Shape long_shape() const noexcept {
    return {batch, channels, long_frames(), height, width};
  }

  void validate() const;
};

/// Frame i of the result is frame (i mod t) of `short_noise`.
LatentTensor replicate_noise(const LatentTensor& short_noise,
                             std::size_t count);

/// For idx = t, t + (t-o), ... while idx + (t-o) <= L, overwrite frames
/// [idx, idx + t - o) with a shuffled copy of frames [idx - t, idx - o) as
/// they stand at that iteration.
LatentTensor shuffle_strides(const LatentTensor& long_noise, std::size_t tile,
                             std::size_t overlap, SeededRng& rng);

/// (w*fresh + (1-w)*original) / sqrt(w^2 + (1-w)^2); unit variance for
/// independent unit-variance inputs.
double merge_high(double original, double fresh, double w) noexcept;

/// Linear ramp 0 .. max_merge over `count` positions.
double merge_ramp(std::size_t index, std::size_t count, double max_merge) noexcept;

/// Mix a fresh noise's high band into `long_noise` under the configured
/// Butterworth split and ramp. Fresh noise is drawn from `rng`.
LatentTensor blend_high_frequency(const LatentTensor& long_noise,
                                  const NoiseInitConfig& cfg, SeededRng& rng);

/// Noise before the high-frequency blend, kept for inspection and tests.
struct PreBlendNoise {
  LatentTensor short_noise;
  LatentTensor long_noise;
};

/// randn -> replicate -> shuffle_strides with streams "init" and "shuffle".
PreBlendNoise pre_blend_noise(const NoiseInitConfig& cfg);

/// Full long noise initialization; the blend draws from stream "fresh".
LatentTensor init_long_noise(const NoiseInitConfig& cfg);

}  // namespace videomerge
