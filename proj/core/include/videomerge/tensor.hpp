// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace videomerge {

/// Extents of a 5-axis latent tensor laid out as
/// [batch, channel, frame, height, width], row-major.
struct Shape {
  std::size_t batch = 1;
  std::size_t channels = 1;
  std::size_t frames = 1;
  std::size_t height = 1;
  std::size_t width = 1;

  /// Product of all extents. Throws invalid-shape on zero or overflow.
  std::size_t numel() const;
  std::size_t frame_elements() const noexcept { return height * width; }
  /// Number of (batch, channel) slabs.
  std::size_t slabs() const noexcept { return batch * channels; }

  Shape with_frames(std::size_t f) const noexcept {
    Shape s = *this;
    s.frames = f;
    return s;
  }

  std::string to_string() const;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Throws Error(invalid_shape) if any extent is zero or the element
/// count overflows size_t.
void validate_shape(const Shape& shape);

/// Real 32-bit tensor holding latents, noise and model predictions.
class LatentTensor {
 public:
  LatentTensor() = default;
  explicit LatentTensor(const Shape& shape, float fill = 0.0f);
  LatentTensor(const Shape& shape, std::vector<float> data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  std::size_t offset(std::size_t b, std::size_t c, std::size_t f,
                     std::size_t h, std::size_t w) const noexcept {
    return (((b * shape_.channels + c) * shape_.frames + f) * shape_.height +
            h) * shape_.width + w;
  }
  float& at(std::size_t b, std::size_t c, std::size_t f, std::size_t h,
            std::size_t w) noexcept {
    return data_[offset(b, c, f, h, w)];
  }
  float at(std::size_t b, std::size_t c, std::size_t f, std::size_t h,
           std::size_t w) const noexcept {
    return data_[offset(b, c, f, h, w)];
  }

  /// The contiguous H*W block of frame `f` in slab `slab` (= b*C + c).
  std::span<const float> frame(std::size_t slab, std::size_t f) const noexcept;
  std::span<float> frame(std::size_t slab, std::size_t f) noexcept;

  /// Copy of frames [begin, begin + count) across all slabs.
  LatentTensor slice_frames(std::size_t begin, std::size_t count) const;
  /// Overwrite frames starting at `begin` with all frames of `src`.
  void assign_frames(std::size_t begin, const LatentTensor& src);
  /// Overwrite frame `dst` with frame `src` in every slab.
  void copy_frame(std::size_t dst, std::size_t src);

  bool all_finite() const noexcept;

  friend bool operator==(const LatentTensor&, const LatentTensor&) = default;

 private:
  Shape shape_{};
  std::vector<float> data_;
};

/// Complex spectrum sharing the latent 5-axis convention. Stored in double
/// precision so a forward/inverse roundtrip is float-exact in practice.
class ComplexTensor {
 public:
  using value_type = std::complex<double>;

  ComplexTensor() = default;
  explicit ComplexTensor(const Shape& shape);
  ComplexTensor(const Shape& shape, std::vector<value_type> data);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const value_type> data() const noexcept { return data_; }
  std::span<value_type> data() noexcept { return data_; }

  value_type& at(std::size_t slab, std::size_t f, std::size_t h,
                 std::size_t w) noexcept {
    return data_[((slab * shape_.frames + f) * shape_.height + h) *
                     shape_.width + w];
  }
  const value_type& at(std::size_t slab, std::size_t f, std::size_t h,
                       std::size_t w) const noexcept {
    return data_[((slab * shape_.frames + f) * shape_.height + h) *
                     shape_.width + w];
  }

  friend ComplexTensor operator+(const ComplexTensor& a, const ComplexTensor& b);
  friend bool operator==(const ComplexTensor&, const ComplexTensor&) = default;

 private:
  Shape shape_{};
  std::vector<value_type> data_;
};

/// Max |a - b| over all elements. Throws invalid-shape on mismatch.
double max_abs_diff(const LatentTensor& a, const LatentTensor& b);

}  // namespace videomerge
