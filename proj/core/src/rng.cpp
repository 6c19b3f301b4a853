// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/rng.hpp"

#include <cmath>
#include <limits>

#include "videomerge/error.hpp"

namespace videomerge {

std::uint64_t fnv1a64(std::span<const unsigned char> bytes,
                      std::uint64_t basis) noexcept {
  std::uint64_t h = basis;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64(std::string_view text) noexcept {
  return fnv1a64(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::string_view stream)
    : seed_(seed),
      stream_(stream),
      engine_(splitmix64(seed ^ splitmix64(fnv1a64(stream)))) {}

SeededRng SeededRng::derive(std::string_view label) const {
  std::string child = stream_;
  child += '/';
  child += label;
  return SeededRng(seed_, child);
}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

std::uint64_t SeededRng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw Error(Errc::invalid_parameter, "SeededRng::below(0)");
  }
  // Reject the partial top bucket so every residue is equally likely.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

LatentTensor randn(const Shape& shape, SeededRng& rng) {
  LatentTensor out(shape);
  for (float& v : out.data()) v = static_cast<float>(rng.normal());
  return out;
}

}  // namespace videomerge
