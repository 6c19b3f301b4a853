// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "videomerge/tensor.hpp"

namespace videomerge {

struct ButterworthParams {
  int order = 4;
  double temporal_cutoff = 0.25;
  double spatial_cutoff = 0.25;

  /// Throws invalid-parameter unless order >= 1 and both cutoffs lie in
  /// (0, 0.5].
  void validate() const;
};

/// Real per-bin gain over a (frames, height, width) spectrum grid, applied
/// identically to every (batch, channel) slab.
class FrequencyMask {
 public:
  /// Gains must lie in (0, 1]; length must equal frames*height*width.
  FrequencyMask(std::size_t frames, std::size_t height, std::size_t width,
                std::vector<double> gains);

  /// All-pass mask (every gain 1).
  static FrequencyMask unit(std::size_t frames, std::size_t height,
                            std::size_t width);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::span<const double> gains() const noexcept { return gains_; }

  double at(std::size_t kt, std::size_t kh, std::size_t kw) const noexcept {
    return gains_[(kt * height_ + kh) * width_ + kw];
  }

  bool matches(const Shape& shape) const noexcept {
    return shape.frames == frames_ && shape.height == height_ &&
           shape.width == width_;
  }

 private:
  std::size_t frames_;
  std::size_t height_;
  std::size_t width_;
  std::vector<double> gains_;
};

/// Normalized frequency min(k, N-k)/N of bin k on an axis of length N.
double normalized_frequency(std::size_t k, std::size_t n) noexcept;

/// Squared-magnitude Butterworth response 1 / (1 + (f/c)^(2m)).
double butterworth_gain(double f, double cutoff, int order) noexcept;

/// Separable temporal x radial-spatial Butterworth low-pass:
///   gain = B(f_t; c_t, m) * B(sqrt(f_h^2 + f_w^2); c_s, m).
FrequencyMask butterworth_mask(std::size_t frames, std::size_t height,
                               std::size_t width,
                               const ButterworthParams& params = {});

/// Low/high partition of a spectrum under a mask.
struct FrequencySplit {
  ComplexTensor low;
  ComplexTensor high;
};

/// low = X * P and high = X - low, where X = fft3(x). The parts recombine
/// to X bitwise.
FrequencySplit split_frequency(const LatentTensor& x, const FrequencyMask& mask);
FrequencySplit split_frequency(const ComplexTensor& spectrum,
                               const FrequencyMask& mask);

}  // namespace videomerge
