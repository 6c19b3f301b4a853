// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "videomerge/tensor.hpp"

namespace videomerge {

/// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::span<const unsigned char> bytes,
                      std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;
std::uint64_t fnv1a64(std::string_view text) noexcept;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic random stream identified by (seed, stream label).
///
/// Built only from pieces whose output the C++ standard pins down
/// (mt19937_64) plus our own normal and index transforms, so the sequence
/// does not depend on the standard library vendor.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::string_view stream);

  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& stream() const noexcept { return stream_; }

  /// Independent child stream "<stream>/<label>" of the same seed.
  SeededRng derive(std::string_view label) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::string stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// I.i.d. standard normal tensor. Throws invalid-shape for zero or
/// overflowing extents.
LatentTensor randn(const Shape& shape, SeededRng& rng);

}  // namespace videomerge
