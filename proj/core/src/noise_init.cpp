// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/noise_init.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "videomerge/error.hpp"
#include "videomerge/fft.hpp"

namespace videomerge {

void NoiseInitConfig::validate() const {
  if (tile_frames == 0) {
    throw Error(Errc::invalid_parameter, "tile_frames must be positive");
  }
  if (overlap >= tile_frames) {
    throw Error(Errc::invalid_parameter,
                "overlap " + std::to_string(overlap) +
                    " must be smaller than tile_frames " +
                    std::to_string(tile_frames));
  }
  if (replication == 0) {
    throw Error(Errc::invalid_parameter, "replication must be positive");
  }
  if (!(max_merge >= 0.0 && max_merge <= 1.0)) {
    std::ostringstream os;
    os << "max_merge must lie in [0, 1], got " << max_merge;
    throw Error(Errc::invalid_parameter, os.str());
  }
  filter.validate();
  validate_shape(long_shape());
}

LatentTensor replicate_noise(const LatentTensor& short_noise,
                             std::size_t count) {
  if (count == 0) {
    throw Error(Errc::invalid_parameter, "replication count must be positive");
  }
  const std::size_t t = short_noise.shape().frames;
  LatentTensor out(short_noise.shape().with_frames(t * count));
  for (std::size_t r = 0; r < count; ++r) out.assign_frames(r * t, short_noise);
  return out;
}

LatentTensor shuffle_strides(const LatentTensor& long_noise, std::size_t tile,
                             std::size_t overlap, SeededRng& rng) {
  if (overlap >= tile) {
    throw Error(Errc::invalid_parameter,
                "overlap must be smaller than the tile length");
  }
  const std::size_t stride = tile - overlap;
  const std::size_t length = long_noise.shape().frames;
  LatentTensor out = long_noise;
  std::vector<std::size_t> sources(stride);
  for (std::size_t idx = tile; idx + stride <= length; idx += stride) {
    std::iota(sources.begin(), sources.end(), idx - tile);
    rng.shuffle(std::span<std::size_t>(sources));
    // Sources end at idx - overlap <= idx, so reads never see this
    // iteration's writes.
    for (std::size_t j = 0; j < stride; ++j) out.copy_frame(idx + j, sources[j]);
  }
  return out;
}

double merge_high(double original, double fresh, double w) noexcept {
  const double d = std::sqrt(w * w + (1.0 - w) * (1.0 - w));
  return (w * fresh + (1.0 - w) * original) / d;
}

double merge_ramp(std::size_t index, std::size_t count,
                  double max_merge) noexcept {
  if (count <= 1) return 0.0;
  return max_merge * static_cast<double>(index) /
         static_cast<double>(count - 1);
}

namespace {

LatentTensor blend_time_ramp(const LatentTensor& long_noise,
                             const FrequencySplit& original,
                             const FrequencySplit& fresh,
                             const NoiseInitConfig& cfg) {
  const LatentTensor low = ifft3(original.low);
  const LatentTensor high = ifft3(original.high);
  const LatentTensor fresh_high = ifft3(fresh.high);
  const Shape& shape = long_noise.shape();
  LatentTensor out(shape);
  for (std::size_t s = 0; s < shape.slabs(); ++s) {
    for (std::size_t f = 0; f < shape.frames; ++f) {
      const double w = merge_ramp(f, shape.frames, cfg.max_merge);
      auto lo = low.frame(s, f);
      auto hi = high.frame(s, f);
      auto fh = fresh_high.frame(s, f);
      auto dst = out.frame(s, f);
      for (std::size_t i = 0; i < dst.size(); ++i) {
        const double mixed = cfg.literal_weight_order
                                 ? merge_high(fh[i], hi[i], w)
                                 : merge_high(hi[i], fh[i], w);
        dst[i] = static_cast<float>(static_cast<double>(lo[i]) + mixed);
      }
    }
  }
  return out;
}

LatentTensor blend_frequency_ramp(const FrequencySplit& original,
                                  const FrequencySplit& fresh,
                                  const NoiseInitConfig& cfg) {
  const Shape& shape = original.low.shape();
  ComplexTensor combined(shape);
  for (std::size_t s = 0; s < shape.slabs(); ++s) {
    for (std::size_t kt = 0; kt < shape.frames; ++kt) {
      const double w = merge_ramp(kt, shape.frames, cfg.max_merge);
      const double d = std::sqrt(w * w + (1.0 - w) * (1.0 - w));
      const double w_orig = cfg.literal_weight_order ? w : 1.0 - w;
      const double w_fresh = cfg.literal_weight_order ? 1.0 - w : w;
      for (std::size_t kh = 0; kh < shape.height; ++kh) {
        for (std::size_t kw = 0; kw < shape.width; ++kw) {
          combined.at(s, kt, kh, kw) =
              original.low.at(s, kt, kh, kw) +
              (w_orig * original.high.at(s, kt, kh, kw) +
               w_fresh * fresh.high.at(s, kt, kh, kw)) / d;
        }
      }
    }
  }
  return ifft3(combined, ImaginaryResidue::discard);
}

}  // namespace

LatentTensor blend_high_frequency(const LatentTensor& long_noise,
                                  const NoiseInitConfig& cfg, SeededRng& rng) {
  cfg.filter.validate();
  if (!(cfg.max_merge >= 0.0 && cfg.max_merge <= 1.0)) {
    throw Error(Errc::invalid_parameter, "max_merge must lie in [0, 1]");
  }
  const Shape& shape = long_noise.shape();
  const FrequencyMask mask =
      butterworth_mask(shape.frames, shape.height, shape.width, cfg.filter);
  const LatentTensor fresh_noise = randn(shape, rng);
  const FrequencySplit original = split_frequency(long_noise, mask);
  const FrequencySplit fresh = split_frequency(fresh_noise, mask);
  if (cfg.blend_mode == BlendMode::literal_frequency_ramp) {
    return blend_frequency_ramp(original, fresh, cfg);
  }
  return blend_time_ramp(long_noise, original, fresh, cfg);
}

PreBlendNoise pre_blend_noise(const NoiseInitConfig& cfg) {
  cfg.validate();
  SeededRng init_rng(cfg.seed, "init");
  SeededRng shuffle_rng(cfg.seed, "shuffle");
  LatentTensor short_noise = randn(cfg.short_shape(), init_rng);
  LatentTensor long_noise =
      shuffle_strides(replicate_noise(short_noise, cfg.replication),
                      cfg.tile_frames, cfg.overlap, shuffle_rng);
  return {std::move(short_noise), std::move(long_noise)};
}

LatentTensor init_long_noise(const NoiseInitConfig& cfg) {
  const PreBlendNoise pre = pre_blend_noise(cfg);
  SeededRng fresh_rng(cfg.seed, "fresh");
  return blend_high_frequency(pre.long_noise, cfg, fresh_rng);
}

}  // namespace videomerge
