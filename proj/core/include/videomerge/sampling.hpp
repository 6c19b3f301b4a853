// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "videomerge/fusion.hpp"
#include "videomerge/noise_init.hpp"
#include "videomerge/tensor.hpp"

namespace videomerge {

/// Noise levels sigma_0 > sigma_1 > ... > sigma_N = 0.
struct SigmaSchedule {
  std::vector<double> sigmas;

  std::size_t steps() const noexcept {
    return sigmas.empty() ? 0 : sigmas.size() - 1;
  }
  /// Throws invalid-parameter unless strictly decreasing and ending at 0.
  void validate() const;
};

/// Linear flow-matching schedule sigma_i = 1 - i/steps.
SigmaSchedule build_schedule(std::size_t steps);

/// x + (sigma_next - sigma_cur) * v.
LatentTensor euler_step(const LatentTensor& x, const LatentTensor& velocity,
                        double sigma_cur, double sigma_next);

/// Text conditioning handed to every tile at every step.
struct Condition {
  std::vector<float> embedding;
  std::string prompt;
};

/// Deterministic toy text embedding of fixed length (hashing trick over
/// lower-cased words, L2-normalized). Real text encoders attach here.
Condition embed_prompt(std::string_view prompt, std::size_t dimension = 16);

/// Where the tile being denoised sits inside the long latent.
struct TileContext {
  std::size_t tile_index = 0;
  std::size_t frame_begin = 0;
};

/// A model that predicts a flow-matching velocity for one tile.
///
/// Implementations must be deterministic in their arguments and return a
/// finite tensor of the input's shape. If `concurrent()` returns true,
/// predict may be called from several threads at once.
class Denoiser {
 public:
  virtual ~Denoiser() = default;

  virtual LatentTensor predict(const LatentTensor& tile, double sigma,
                               const Condition& condition,
                               const TileContext& context) const = 0;

  virtual bool concurrent() const noexcept { return true; }
  virtual std::string name() const = 0;
};

struct TileExecution {
  /// Evaluate the tiles of a step on worker threads.
  bool parallel = false;
  /// Upper bound on tiles evaluated (and predictions held) at once;
  /// 0 picks the hardware concurrency.
  std::size_t max_in_flight = 0;
};

/// One sampler step over a long latent: denoise every tile at sigma_cur,
/// fuse the predictions, apply a single Euler update. The result does not
/// depend on evaluation order or parallelism.
LatentTensor denoise_step_tiled(const LatentTensor& x_long, double sigma_cur,
                                double sigma_next, const Denoiser& denoiser,
                                const TileLayout& layout,
                                const Condition& condition,
                                const TileExecution& execution = {});

struct GenerationConfig {
  TileLayout layout = TileLayout::create(16, 12, 112);
  SigmaSchedule schedule = build_schedule(30);
  NoiseInitConfig noise{};
  Condition condition{};
  TileExecution execution{};

  /// Throws invalid-parameter if the layout does not span the noise's
  /// n*t frames or its tile length differs from the noise tile length.
  void validate() const;
};

/// init_long_noise followed by the full tiled sampling loop.
LatentTensor generate(const GenerationConfig& cfg, const Denoiser& denoiser);

/// Sampling loop from a caller-supplied initial latent.
LatentTensor generate_from(LatentTensor initial, const GenerationConfig& cfg,
                           const Denoiser& denoiser);

}  // namespace videomerge
