// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "videomerge/sampling.hpp"

namespace videomerge {

/// Reference denoisers with closed-form behavior, used to verify the
/// sampling machinery without a neural network.

/// Always predicts zero velocity; sampling leaves the latent unchanged.
class ZeroDenoiser final : public Denoiser {
 public:
  LatentTensor predict(const LatentTensor& tile, double sigma,
                       const Condition& condition,
                       const TileContext& context) const override;
  std::string name() const override { return "zero"; }
};

inline constexpr double kSigmaFloor = 1e-6;

/// v = (x - target_slice) / max(sigma, 1e-6). Euler sampling to sigma = 0
/// lands exactly on the target.
class GlobalTargetOracle : public Denoiser {
 public:
  /// `target` spans the whole long latent.
  explicit GlobalTargetOracle(LatentTensor target);

  LatentTensor predict(const LatentTensor& tile, double sigma,
                       const Condition& condition,
                       const TileContext& context) const override;
  std::string name() const override { return "oracle"; }

  const LatentTensor& target() const noexcept { return target_; }

 protected:
  LatentTensor target_slice(const LatentTensor& tile,
                            const TileContext& context) const;

 private:
  LatentTensor target_;
};

/// Oracle whose clean-latent estimate is off by a tile-specific amount:
///
///   x0_hat = target + a * (g_i + (x - target)),  v = (x - x0_hat) / sigma
///
/// where g_i is a standard normal field fixed per tile index (stream
/// "perturb/<i>" of `seed`). Tiles that overlap disagree through g_i, and
/// the a * (x - target) term keeps part of the current latent in the
/// estimate, so the initial noise leaves a trace in the output the way it
/// does with a trained model. Amplitude 0 is exactly GlobalTargetOracle.
class PerturbedOracle final : public GlobalTargetOracle {
 public:
  PerturbedOracle(LatentTensor target, double amplitude, std::uint64_t seed);

  LatentTensor predict(const LatentTensor& tile, double sigma,
                       const Condition& condition,
                       const TileContext& context) const override;
  std::string name() const override { return "perturbed"; }

  double amplitude() const noexcept { return amplitude_; }

 private:
  double amplitude_;
  std::uint64_t seed_;
};

}  // namespace videomerge
