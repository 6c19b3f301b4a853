// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "videomerge/error.hpp"

namespace videomerge {

namespace {

bool mul_overflows(std::size_t a, std::size_t b, std::size_t& out) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return true;
  out = a * b;
  return false;
}

}  // namespace

std::size_t Shape::numel() const {
  validate_shape(*this);
  return batch * channels * frames * height * width;
}

std::string Shape::to_string() const {
  std::ostringstream os;
  os << '(' << batch << ',' << channels << ',' << frames << ',' << height
     << ',' << width << ')';
  return os.str();
}

void validate_shape(const Shape& shape) {
  const std::size_t extents[] = {shape.batch, shape.channels, shape.frames,
                                 shape.height, shape.width};
  std::size_t total = 1;
  for (std::size_t e : extents) {
    if (e == 0) {
      throw Error(Errc::invalid_shape,
                  "zero extent in shape " + shape.to_string());
    }
    if (mul_overflows(total, e, total)) {
      throw Error(Errc::invalid_shape,
                  "element count overflows for shape " + shape.to_string());
    }
  }
  // Element payloads are addressed in bytes by the file format and FFT.
  if (total > std::numeric_limits<std::size_t>::max() / sizeof(double) / 2) {
    throw Error(Errc::invalid_shape,
                "element count too large for shape " + shape.to_string());
  }
}

LatentTensor::LatentTensor(const Shape& shape, float fill)
    : shape_(shape), data_(shape.numel(), fill) {}

LatentTensor::LatentTensor(const Shape& shape, std::vector<float> data)
    : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.numel()) {
    throw Error(Errc::invalid_shape,
                "data length " + std::to_string(data_.size()) +
                    " does not match shape " + shape_.to_string());
  }
}

std::span<const float> LatentTensor::frame(std::size_t slab,
                                           std::size_t f) const noexcept {
  const std::size_t n = shape_.frame_elements();
  return std::span<const float>(data_).subspan((slab * shape_.frames + f) * n,
                                               n);
}

std::span<float> LatentTensor::frame(std::size_t slab, std::size_t f) noexcept {
  const std::size_t n = shape_.frame_elements();
  return std::span<float>(data_).subspan((slab * shape_.frames + f) * n, n);
}

LatentTensor LatentTensor::slice_frames(std::size_t begin,
                                        std::size_t count) const {
  if (count == 0 || begin + count > shape_.frames) {
    throw Error(Errc::index_out_of_range,
                "frame slice [" + std::to_string(begin) + ", " +
                    std::to_string(begin + count) + ") outside " +
                    std::to_string(shape_.frames) + " frames");
  }
  LatentTensor out(shape_.with_frames(count));
  const std::size_t n = shape_.frame_elements();
  for (std::size_t s = 0; s < shape_.slabs(); ++s) {
    auto src = std::span<const float>(data_).subspan(
        (s * shape_.frames + begin) * n, count * n);
    std::copy(src.begin(), src.end(),
              out.data_.begin() + static_cast<std::ptrdiff_t>(s * count * n));
  }
  return out;
}

void LatentTensor::assign_frames(std::size_t begin, const LatentTensor& src) {
  const Shape& ss = src.shape();
  if (ss.batch != shape_.batch || ss.channels != shape_.channels ||
      ss.height != shape_.height || ss.width != shape_.width) {
    throw Error(Errc::invalid_shape, "assign_frames: " + ss.to_string() +
                                         " into " + shape_.to_string());
  }
  if (begin + ss.frames > shape_.frames) {
    throw Error(Errc::index_out_of_range, "assign_frames past the end");
  }
  const std::size_t n = shape_.frame_elements();
  for (std::size_t s = 0; s < shape_.slabs(); ++s) {
    auto from = std::span<const float>(src.data_).subspan(s * ss.frames * n,
                                                          ss.frames * n);
    std::copy(from.begin(), from.end(),
              data_.begin() +
                  static_cast<std::ptrdiff_t>((s * shape_.frames + begin) * n));
  }
}

void LatentTensor::copy_frame(std::size_t dst, std::size_t src) {
  if (dst >= shape_.frames || src >= shape_.frames) {
    throw Error(Errc::index_out_of_range, "copy_frame index out of range");
  }
  if (dst == src) return;
  for (std::size_t s = 0; s < shape_.slabs(); ++s) {
    auto from = frame(s, src);
    std::copy(from.begin(), from.end(), frame(s, dst).begin());
  }
}

bool LatentTensor::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](float v) { return std::isfinite(v); });
}

ComplexTensor::ComplexTensor(const Shape& shape)
    : shape_(shape), data_(shape.numel()) {}

ComplexTensor::ComplexTensor(const Shape& shape, std::vector<value_type> data)
    : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.numel()) {
    throw Error(Errc::invalid_shape, "complex data length does not match " +
                                         shape_.to_string());
  }
}

ComplexTensor operator+(const ComplexTensor& a, const ComplexTensor& b) {
  if (a.shape_ != b.shape_) {
    throw Error(Errc::invalid_shape, "complex add: " + a.shape_.to_string() +
                                         " vs " + b.shape_.to_string());
  }
  ComplexTensor out(a.shape_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) {
    out.data_[i] = a.data_[i] + b.data_[i];
  }
  return out;
}

double max_abs_diff(const LatentTensor& a, const LatentTensor& b) {
  if (a.shape() != b.shape()) {
    throw Error(Errc::invalid_shape, "max_abs_diff: " + a.shape().to_string() +
                                         " vs " + b.shape().to_string());
  }
  double worst = 0.0;
  auto x = a.data();
  auto y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(x[i]) - y[i]));
  }
  return worst;
}

}  // namespace videomerge
