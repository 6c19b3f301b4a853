// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/denoisers.hpp"

#include <algorithm>

#include "videomerge/error.hpp"
#include "videomerge/rng.hpp"

namespace videomerge {

LatentTensor ZeroDenoiser::predict(const LatentTensor& tile, double,
                                   const Condition&,
                                   const TileContext&) const {
  return LatentTensor(tile.shape());
}

GlobalTargetOracle::GlobalTargetOracle(LatentTensor target)
    : target_(std::move(target)) {}

LatentTensor GlobalTargetOracle::target_slice(const LatentTensor& tile,
                                              const TileContext& context) const {
  const Shape& ts = tile.shape();
  const Shape& gs = target_.shape();
  if (ts.batch != gs.batch || ts.channels != gs.channels ||
      ts.height != gs.height || ts.width != gs.width) {
    throw Error(Errc::invalid_shape, "target " + gs.to_string() +
                                         " incompatible with tile " +
                                         ts.to_string());
  }
  return target_.slice_frames(context.frame_begin, ts.frames);
}

LatentTensor GlobalTargetOracle::predict(const LatentTensor& tile, double sigma,
                                         const Condition&,
                                         const TileContext& context) const {
  const LatentTensor target = target_slice(tile, context);
  const double inv = 1.0 / std::max(sigma, kSigmaFloor);
  LatentTensor v(tile.shape());
  auto x = tile.data();
  auto t = target.data();
  auto out = v.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>((static_cast<double>(x[i]) - t[i]) * inv);
  }
  return v;
}

PerturbedOracle::PerturbedOracle(LatentTensor target, double amplitude,
                                 std::uint64_t seed)
    : GlobalTargetOracle(std::move(target)), amplitude_(amplitude), seed_(seed) {}

LatentTensor PerturbedOracle::predict(const LatentTensor& tile, double sigma,
                                      const Condition& condition,
                                      const TileContext& context) const {
  if (amplitude_ == 0.0) {
    return GlobalTargetOracle::predict(tile, sigma, condition, context);
  }
  const LatentTensor target = target_slice(tile, context);
  SeededRng rng(seed_, "perturb/" + std::to_string(context.tile_index));
  const LatentTensor field = randn(tile.shape(), rng);
  const double inv = 1.0 / std::max(sigma, kSigmaFloor);
  const double a = amplitude_;
  LatentTensor v(tile.shape());
  auto x = tile.data();
  auto t = target.data();
  auto g = field.data();
  auto out = v.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double dev = static_cast<double>(x[i]) - t[i];
    const double x0 = t[i] + a * (g[i] + dev);
    out[i] = static_cast<float>((static_cast<double>(x[i]) - x0) * inv);
  }
  return v;
}

}  // namespace videomerge
