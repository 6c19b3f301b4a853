// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/frequency_mask.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "videomerge/error.hpp"
#include "videomerge/fft.hpp"

namespace videomerge {

namespace {

struct Parts {
  double low;
  double high;
};

// Splits total into low ~= total * gain and high with low + high == total
// bitwise. Rounding low onto the ulp grid of total makes total - low exact;
// the cost is at most half an ulp of total in low.
Parts split_exact(double total, double gain) noexcept {
  if (total == 0.0 || !std::isfinite(total)) return {total * gain, 0.0};
  const double mag = std::abs(total);
  const double q = std::nextafter(mag, std::numeric_limits<double>::infinity()) - mag;
  const double low = std::nearbyint(total * gain / q) * q;
  return {low, total - low};
}

void check_mask_shape(const FrequencyMask& mask, const Shape& shape) {
  if (!mask.matches(shape)) {
    throw Error(Errc::invalid_shape,
                "mask (" + std::to_string(mask.frames()) + "," +
                    std::to_string(mask.height()) + "," +
                    std::to_string(mask.width()) + ") does not match " +
                    shape.to_string());
  }
}

}  // namespace

void ButterworthParams::validate() const {
  if (order < 1) {
    throw Error(Errc::invalid_parameter,
                "Butterworth order must be >= 1, got " + std::to_string(order));
  }
  auto check = [](double c, const char* what) {
    if (!(c > 0.0 && c <= 0.5)) {
      std::ostringstream os;
      os << what << " cutoff must lie in (0, 0.5], got " << c;
      throw Error(Errc::invalid_parameter, os.str());
    }
  };
  check(temporal_cutoff, "temporal");
  check(spatial_cutoff, "spatial");
}

FrequencyMask::FrequencyMask(std::size_t frames, std::size_t height,
                             std::size_t width, std::vector<double> gains)
    : frames_(frames), height_(height), width_(width), gains_(std::move(gains)) {
  validate_shape(Shape{1, 1, frames, height, width});
  if (gains_.size() != frames * height * width) {
    throw Error(Errc::invalid_shape, "mask gain count does not match extents");
  }
  for (double g : gains_) {
    if (!(g > 0.0 && g <= 1.0)) {
      throw Error(Errc::invalid_parameter, "mask gains must lie in (0, 1]");
    }
  }
}

FrequencyMask FrequencyMask::unit(std::size_t frames, std::size_t height,
                                  std::size_t width) {
  return FrequencyMask(frames, height, width,
                       std::vector<double>(frames * height * width, 1.0));
}

double normalized_frequency(std::size_t k, std::size_t n) noexcept {
  const std::size_t folded = std::min(k, n - k);
  return static_cast<double>(folded) / static_cast<double>(n);
}

double butterworth_gain(double f, double cutoff, int order) noexcept {
  if (f == 0.0) return 1.0;
  return 1.0 / (1.0 + std::pow(f / cutoff, 2.0 * order));
}

FrequencyMask butterworth_mask(std::size_t frames, std::size_t height,
                               std::size_t width,
                               const ButterworthParams& params) {
  params.validate();
  validate_shape(Shape{1, 1, frames, height, width});
  std::vector<double> gains(frames * height * width);
  std::vector<double> spatial(height * width);
  for (std::size_t kh = 0; kh < height; ++kh) {
    const double fh = normalized_frequency(kh, height);
    for (std::size_t kw = 0; kw < width; ++kw) {
      const double fw = normalized_frequency(kw, width);
      spatial[kh * width + kw] = butterworth_gain(
          std::sqrt(fh * fh + fw * fw), params.spatial_cutoff, params.order);
    }
  }
  for (std::size_t kt = 0; kt < frames; ++kt) {
    const double temporal =
        butterworth_gain(normalized_frequency(kt, frames),
                         params.temporal_cutoff, params.order);
    for (std::size_t i = 0; i < spatial.size(); ++i) {
      gains[kt * spatial.size() + i] = temporal * spatial[i];
    }
  }
  return FrequencyMask(frames, height, width, std::move(gains));
}

FrequencySplit split_frequency(const ComplexTensor& spectrum,
                               const FrequencyMask& mask) {
  const Shape& shape = spectrum.shape();
  check_mask_shape(mask, shape);
  FrequencySplit out{ComplexTensor(shape), ComplexTensor(shape)};
  auto src = spectrum.data();
  auto low = out.low.data();
  auto high = out.high.data();
  auto gains = mask.gains();
  const std::size_t per_slab = gains.size();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double g = gains[i % per_slab];
    const Parts re = split_exact(src[i].real(), g);
    const Parts im = split_exact(src[i].imag(), g);
    low[i] = {re.low, im.low};
    high[i] = {re.high, im.high};
  }
  return out;
}

FrequencySplit split_frequency(const LatentTensor& x, const FrequencyMask& mask) {
  check_mask_shape(mask, x.shape());
  return split_frequency(fft3(x), mask);
}

}  // namespace videomerge
