// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "videomerge/tensor.hpp"

namespace videomerge {

/// Sliding-tile geometry over a long latent: tile i covers the half-open
/// frame range [i*stride, i*stride + n), and the last tile ends at L.
class TileLayout {
 public:
  /// Throws invalid-parameter unless 0 <= overlap < tile_length,
  /// long_length >= tile_length and (L - n) is a multiple of the stride.
  static TileLayout create(std::size_t tile_length, std::size_t overlap,
                           std::size_t long_length);

  std::size_t tile_length() const noexcept { return tile_length_; }
  std::size_t overlap() const noexcept { return overlap_; }
  std::size_t long_length() const noexcept { return long_length_; }
  std::size_t stride() const noexcept { return tile_length_ - overlap_; }
  std::size_t tile_count() const noexcept {
    return (long_length_ - tile_length_) / stride() + 1;
  }
  std::size_t tile_begin(std::size_t tile) const noexcept {
    return tile * stride();
  }

  friend bool operator==(const TileLayout&, const TileLayout&) = default;

 private:
  TileLayout(std::size_t n, std::size_t o, std::size_t l)
      : tile_length_(n), overlap_(o), long_length_(l) {}

  std::size_t tile_length_;
  std::size_t overlap_;
  std::size_t long_length_;
};

/// Inclusive range of tiles whose window contains a frame.
struct TileRange {
  std::size_t first;
  std::size_t last;

  std::size_t count() const noexcept { return last - first + 1; }
};

/// Tiles i with i*stride <= t < i*stride + n. Throws index-out-of-range when
/// t >= L.
TileRange covering_range(std::size_t frame, const TileLayout& layout);
std::vector<std::size_t> covering_tiles(std::size_t frame,
                                        const TileLayout& layout);

/// Sine weight sin(s*pi/n + pi/(2n)) of in-tile offset s. Throws
/// index-out-of-range when s >= n.
double omega(std::size_t offset, std::size_t tile_length);

struct TileWeight {
  std::size_t tile;
  double weight;
};

/// Per frame: the covering tiles (ascending) with weights normalized to sum
/// to one. These are exactly the coefficients fuse applies.
std::vector<std::vector<TileWeight>> weight_table(const TileLayout& layout);

struct TilePrediction {
  std::size_t tile;
  LatentTensor value;
};

/// Streaming form of fuse. Tiles must be added in ascending index order,
/// which fixes the floating-point accumulation order and so the bits of
/// the result. Holds one double accumulator the size of the long latent.
class FusionAccumulator {
 public:
  /// `tile_shape` is the shape of one tile prediction (n frames).
  FusionAccumulator(const TileLayout& layout, const Shape& tile_shape);

  /// Throws invalid-parameter if `tile` is not the next expected index and
  /// invalid-shape if `prediction` does not match the tile shape.
  void add(std::size_t tile, const LatentTensor& prediction);

  std::size_t next_tile() const noexcept { return next_; }
  bool complete() const noexcept { return next_ == layout_.tile_count(); }

  /// Throws incomplete-predictions unless every tile has been added.
  LatentTensor finish() const;

 private:
  TileLayout layout_;
  Shape tile_shape_;
  Shape long_shape_;
  // normalized_[tile * n + offset]
  std::vector<double> normalized_;
  std::vector<double> acc_;
  std::size_t next_ = 0;
};

/// Weighted fusion of per-tile predictions into one long latent. Input
/// order does not matter; accumulation runs in ascending tile order.
LatentTensor fuse(std::span<const TilePrediction> predictions,
                  const TileLayout& layout);

}  // namespace videomerge
