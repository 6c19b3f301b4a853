// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/latent_file.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "videomerge/error.hpp"
#include "videomerge/rng.hpp"

namespace videomerge {

namespace {

constexpr unsigned char kMagic[4] = {'V', 'M', 'L', 'T'};

template <typename T>
void put_le(std::vector<unsigned char>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<unsigned char>(value >> (8 * i)));
  }
}

template <typename T>
T get_le(std::span<const unsigned char> bytes, std::size_t at) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<T>(bytes[at + i]) << (8 * i);
  }
  return v;
}

void append_payload(std::vector<unsigned char>& out, const LatentTensor& t) {
  for (float f : t.data()) put_le(out, std::bit_cast<std::uint32_t>(f));
}

}  // namespace

std::uint64_t latent_checksum(const LatentTensor& tensor) {
  std::vector<unsigned char> payload;
  payload.reserve(tensor.size() * 4);
  append_payload(payload, tensor);
  return fnv1a64(payload);
}

std::vector<unsigned char> encode_latent(const LatentTensor& tensor) {
  const Shape& s = tensor.shape();
  for (std::size_t e : {s.batch, s.channels, s.frames, s.height, s.width}) {
    if (e > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(Errc::invalid_shape, "extent does not fit the VMLT header");
    }
  }
  std::vector<unsigned char> out;
  out.reserve(kLatentHeaderBytes + tensor.size() * 4 + 8);
  for (unsigned char c : kMagic) out.push_back(c);
  put_le(out, kLatentFileVersion);
  for (std::size_t e : {s.batch, s.channels, s.frames, s.height, s.width}) {
    put_le(out, static_cast<std::uint32_t>(e));
  }
  append_payload(out, tensor);
  const auto payload =
      std::span<const unsigned char>(out).subspan(kLatentHeaderBytes);
  put_le(out, fnv1a64(payload));
  return out;
}

LatentTensor decode_latent(std::span<const unsigned char> bytes) {
  if (bytes.size() < kLatentHeaderBytes + 8) {
    throw Error(Errc::parse_error, "VMLT file truncated: " +
                                       std::to_string(bytes.size()) + " bytes");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(Errc::parse_error, "not a VMLT file (bad magic)");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kLatentFileVersion) {
    throw Error(Errc::parse_error,
                "unsupported VMLT version " + std::to_string(version));
  }
  Shape shape{get_le<std::uint32_t>(bytes, 6), get_le<std::uint32_t>(bytes, 10),
              get_le<std::uint32_t>(bytes, 14), get_le<std::uint32_t>(bytes, 18),
              get_le<std::uint32_t>(bytes, 22)};
  std::size_t count = 0;
  try {
    count = shape.numel();
  } catch (const Error& e) {
    throw Error(Errc::parse_error, std::string("VMLT header: ") + e.what());
  }
  if (count > (bytes.size() - kLatentHeaderBytes - 8) / 4 ||
      bytes.size() != kLatentHeaderBytes + count * 4 + 8) {
    throw Error(Errc::parse_error,
                "VMLT size mismatch: header " + shape.to_string() +
                    " needs " + std::to_string(count * 4) + " payload bytes");
  }
  const auto payload = bytes.subspan(kLatentHeaderBytes, count * 4);
  const auto stored = get_le<std::uint64_t>(bytes, kLatentHeaderBytes + count * 4);
  if (fnv1a64(payload) != stored) {
    throw Error(Errc::checksum_mismatch, "VMLT payload checksum mismatch");
  }
  std::vector<float> data(count);
  for (std::size_t i = 0; i < count; ++i) {
    data[i] = std::bit_cast<float>(get_le<std::uint32_t>(payload, 4 * i));
  }
  return LatentTensor(shape, std::move(data));
}

void write_latent_file(const std::filesystem::path& path,
                       const LatentTensor& tensor) {
  const auto bytes = encode_latent(tensor);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::io_error, "write to '" + path.string() + "' failed");
}

LatentTensor read_latent_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io_error, "cannot open '" + path.string() + "'");
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return decode_latent(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace videomerge
