// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "videomerge/error.hpp"

namespace videomerge {

TileLayout TileLayout::create(std::size_t tile_length, std::size_t overlap,
                              std::size_t long_length) {
  if (tile_length == 0) {
    throw Error(Errc::invalid_parameter, "tile length must be positive");
  }
  if (overlap >= tile_length) {
    throw Error(Errc::invalid_parameter,
                "overlap " + std::to_string(overlap) +
                    " must be smaller than tile length " +
                    std::to_string(tile_length));
  }
  if (long_length < tile_length) {
    throw Error(Errc::invalid_parameter,
                "long length " + std::to_string(long_length) +
                    " is shorter than one tile");
  }
  const std::size_t stride = tile_length - overlap;
  if ((long_length - tile_length) % stride != 0) {
    throw Error(Errc::invalid_parameter,
                "long length " + std::to_string(long_length) +
                    " minus tile length is not a multiple of stride " +
                    std::to_string(stride));
  }
  return TileLayout(tile_length, overlap, long_length);
}

TileRange covering_range(std::size_t frame, const TileLayout& layout) {
  if (frame >= layout.long_length()) {
    throw Error(Errc::index_out_of_range,
                "frame " + std::to_string(frame) + " outside [0, " +
                    std::to_string(layout.long_length()) + ")");
  }
  const std::size_t n = layout.tile_length();
  const std::size_t stride = layout.stride();
  // First tile whose end lies strictly after the frame.
  const std::size_t first = frame < n ? 0 : (frame - n) / stride + 1;
  const std::size_t last =
      std::min(layout.tile_count() - 1, frame / stride);
  return {first, last};
}

std::vector<std::size_t> covering_tiles(std::size_t frame,
                                        const TileLayout& layout) {
  const TileRange r = covering_range(frame, layout);
  std::vector<std::size_t> tiles(r.count());
  for (std::size_t i = 0; i < tiles.size(); ++i) tiles[i] = r.first + i;
  return tiles;
}

double omega(std::size_t offset, std::size_t tile_length) {
  if (offset >= tile_length) {
    throw Error(Errc::index_out_of_range,
                "in-tile offset " + std::to_string(offset) +
                    " outside [0, " + std::to_string(tile_length) + ")");
  }
  const double n = static_cast<double>(tile_length);
  return std::sin(static_cast<double>(offset) * std::numbers::pi / n +
                  std::numbers::pi / (2.0 * n));
}

std::vector<std::vector<TileWeight>> weight_table(const TileLayout& layout) {
  std::vector<std::vector<TileWeight>> table(layout.long_length());
  for (std::size_t t = 0; t < table.size(); ++t) {
    const TileRange r = covering_range(t, layout);
    double total = 0.0;
    auto& row = table[t];
    row.reserve(r.count());
    for (std::size_t i = r.first; i <= r.last; ++i) {
      const double w = omega(t - layout.tile_begin(i), layout.tile_length());
      row.push_back({i, w});
      total += w;
    }
    for (auto& entry : row) entry.weight /= total;
  }
  return table;
}

FusionAccumulator::FusionAccumulator(const TileLayout& layout,
                                     const Shape& tile_shape)
    : layout_(layout),
      tile_shape_(tile_shape),
      long_shape_(tile_shape.with_frames(layout.long_length())) {
  if (tile_shape.frames != layout.tile_length()) {
    throw Error(Errc::invalid_shape,
                "tile shape " + tile_shape.to_string() + " does not have " +
                    std::to_string(layout.tile_length()) + " frames");
  }
  const std::size_t n = layout.tile_length();
  normalized_.assign(layout.tile_count() * n, 0.0);
  const auto table = weight_table(layout);
  for (std::size_t t = 0; t < table.size(); ++t) {
    for (const TileWeight& e : table[t]) {
      normalized_[e.tile * n + (t - layout.tile_begin(e.tile))] = e.weight;
    }
  }
  acc_.assign(long_shape_.numel(), 0.0);
}

void FusionAccumulator::add(std::size_t tile, const LatentTensor& prediction) {
  if (tile != next_) {
    throw Error(Errc::invalid_parameter,
                "fusion expects tile " + std::to_string(next_) + ", got " +
                    std::to_string(tile));
  }
  if (prediction.shape() != tile_shape_) {
    throw Error(Errc::invalid_shape,
                "tile " + std::to_string(tile) + " prediction has shape " +
                    prediction.shape().to_string() + ", expected " +
                    tile_shape_.to_string());
  }
  const std::size_t n = layout_.tile_length();
  const std::size_t plane = tile_shape_.frame_elements();
  const std::size_t begin = layout_.tile_begin(tile);
  for (std::size_t s = 0; s < tile_shape_.slabs(); ++s) {
    for (std::size_t off = 0; off < n; ++off) {
      const double w = normalized_[tile * n + off];
      auto src = prediction.frame(s, off);
      double* dst = acc_.data() + (s * long_shape_.frames + begin + off) * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        dst[i] += w * static_cast<double>(src[i]);
      }
    }
  }
  ++next_;
}

LatentTensor FusionAccumulator::finish() const {
  if (!complete()) {
    throw Error(Errc::incomplete_predictions,
                "missing prediction for tile " + std::to_string(next_) +
                    " of " + std::to_string(layout_.tile_count()));
  }
  LatentTensor out(long_shape_);
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(acc_[i]);
  }
  return out;
}

LatentTensor fuse(std::span<const TilePrediction> predictions,
                  const TileLayout& layout) {
  std::vector<const TilePrediction*> ordered;
  ordered.reserve(predictions.size());
  for (const auto& p : predictions) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const TilePrediction* a, const TilePrediction* b) {
              return a->tile < b->tile;
            });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->tile == ordered[i - 1]->tile) {
      throw Error(Errc::invalid_parameter,
                  "duplicate prediction for tile " +
                      std::to_string(ordered[i]->tile));
    }
  }
  const std::size_t m = layout.tile_count();
  for (std::size_t i = 0; i < m; ++i) {
    if (i >= ordered.size() || ordered[i]->tile != i) {
      throw Error(Errc::incomplete_predictions,
                  "missing prediction for tile " + std::to_string(i) + " of " +
                      std::to_string(m));
    }
  }
  if (ordered.size() > m) {
    throw Error(Errc::invalid_parameter,
                "prediction for tile " + std::to_string(ordered[m]->tile) +
                    " outside the layout");
  }
  FusionAccumulator acc(layout, ordered.front()->value.shape());
  for (const TilePrediction* p : ordered) acc.add(p->tile, p->value);
  return acc.finish();
}

}  // namespace videomerge
