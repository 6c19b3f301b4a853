// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "videomerge/error.hpp"
#include "videomerge/fft.hpp"

namespace videomerge {

namespace {

void require_frames(const LatentTensor& video, const char* what) {
  if (video.shape().frames < 2) {
    throw Error(Errc::insufficient_frames,
                std::string(what) + " needs at least 2 frames, got " +
                    std::to_string(video.shape().frames));
  }
}

double l2_distance(const FeatureVector& a, const FeatureVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

PatchStatsExtractor::PatchStatsExtractor(std::size_t grid) : grid_(grid) {
  if (grid_ == 0) {
    throw Error(Errc::invalid_parameter, "patch grid must be positive");
  }
}

FeatureVector PatchStatsExtractor::embed(const LatentTensor& video,
                                         std::size_t frame) const {
  const Shape& s = video.shape();
  if (frame >= s.frames) {
    throw Error(Errc::index_out_of_range, "frame out of range");
  }
  const std::size_t gh = std::min(grid_, s.height);
  const std::size_t gw = std::min(grid_, s.width);
  FeatureVector out;
  out.reserve(s.slabs() * (gh * gw + 1));
  for (std::size_t slab = 0; slab < s.slabs(); ++slab) {
    auto plane = video.frame(slab, frame);
    for (std::size_t py = 0; py < gh; ++py) {
      const std::size_t y0 = py * s.height / gh;
      const std::size_t y1 = (py + 1) * s.height / gh;
      for (std::size_t px = 0; px < gw; ++px) {
        const std::size_t x0 = px * s.width / gw;
        const std::size_t x1 = (px + 1) * s.width / gw;
        double sum = 0.0;
        for (std::size_t y = y0; y < y1; ++y) {
          for (std::size_t x = x0; x < x1; ++x) sum += plane[y * s.width + x];
        }
        out.push_back(sum / static_cast<double>((y1 - y0) * (x1 - x0)));
      }
    }
    double mean = 0.0;
    for (float v : plane) mean += v;
    mean /= static_cast<double>(plane.size());
    double var = 0.0;
    for (float v : plane) var += (v - mean) * (v - mean);
    out.push_back(std::sqrt(var / static_cast<double>(plane.size())));
  }
  return out;
}

FeatureSet embed_frames(const LatentTensor& video,
                        const FrameFeatureExtractor& extractor) {
  FeatureSet out;
  out.reserve(video.shape().frames);
  for (std::size_t f = 0; f < video.shape().frames; ++f) {
    out.push_back(extractor.embed(video, f));
    if (out.back().size() != out.front().size()) {
      throw Error(Errc::invalid_input, "extractor changed output length");
    }
  }
  return out;
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw Error(Errc::invalid_input, "cosine of vectors of different length");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double temporal_flicker(const LatentTensor& video) {
  require_frames(video, "temporal_flicker");
  const Shape& s = video.shape();
  auto data = video.data();
  const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
  const double range = static_cast<double>(*hi) - *lo;
  if (range == 0.0) return 0.0;
  const std::size_t plane = s.frame_elements();
  double total = 0.0;
  for (std::size_t f = 0; f + 1 < s.frames; ++f) {
    double pair = 0.0;
    for (std::size_t slab = 0; slab < s.slabs(); ++slab) {
      auto a = video.frame(slab, f);
      auto b = video.frame(slab, f + 1);
      for (std::size_t i = 0; i < plane; ++i) {
        pair += std::abs(static_cast<double>(b[i]) - a[i]);
      }
    }
    total += pair / static_cast<double>(plane * s.slabs());
  }
  return total / static_cast<double>(s.frames - 1) / range;
}

double pairwise_consistency(const LatentTensor& video,
                            const FrameFeatureExtractor& extractor) {
  require_frames(video, "pairwise_consistency");
  const FeatureSet emb = embed_frames(video, extractor);
  double total = 0.0;
  for (std::size_t f = 0; f + 1 < emb.size(); ++f) {
    total += cosine_similarity(emb[f], emb[f + 1]);
  }
  return total / static_cast<double>(emb.size() - 1);
}

double identity_consistency(const LatentTensor& video,
                            const FrameFeatureExtractor& extractor,
                            double tau) {
  require_frames(video, "identity_consistency");
  if (!(tau > 0.0)) {
    std::ostringstream os;
    os << "tau must be positive, got " << tau;
    throw Error(Errc::invalid_parameter, os.str());
  }
  const FeatureSet emb = embed_frames(video, extractor);
  std::size_t hits = 0;
  for (std::size_t f = 1; f < emb.size(); ++f) {
    if (l2_distance(emb.front(), emb[f]) < tau) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(emb.size() - 1);
}

double low_freq_similarity(const LatentTensor& video, const TileLayout& layout,
                           const ButterworthParams& filter) {
  const Shape& s = video.shape();
  if (s.frames != layout.long_length()) {
    throw Error(Errc::invalid_shape,
                "video has " + std::to_string(s.frames) +
                    " frames, layout covers " +
                    std::to_string(layout.long_length()));
  }
  const std::size_t n = layout.tile_length();
  const std::size_t m = layout.tile_count();
  // Tiles i < j are disjoint once (j - i) * stride >= n.
  const std::size_t gap = (n + layout.stride() - 1) / layout.stride();
  if (m <= gap) {
    throw Error(Errc::insufficient_windows,
                "layout has no pair of non-overlapping tiles");
  }
  const FrequencyMask mask = butterworth_mask(n, s.height, s.width, filter);
  std::vector<FeatureVector> lows;
  lows.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const LatentTensor window = video.slice_frames(layout.tile_begin(i), n);
    const LatentTensor low = ifft3(split_frequency(window, mask).low);
    lows.emplace_back(low.data().begin(), low.data().end());
  }
  double total = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + gap; j < m; ++j) {
      total += cosine_similarity(lows[i], lows[j]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace videomerge
