// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "videomerge/tensor.hpp"

namespace videomerge {

/// VMLT latent container, all integers little-endian:
///
///   offset  size  field
///   0       4     magic "VMLT"
///   4       2     format version (u16, currently 1)
///   6       20    extents batch, channel, frames, height, width (5 x u32)
///   26      4*N   payload, row-major IEEE-754 binary32
///   26+4N   8     FNV-1a 64 checksum of the payload bytes (u64)
inline constexpr std::uint16_t kLatentFileVersion = 1;
inline constexpr std::size_t kLatentHeaderBytes = 26;

std::vector<unsigned char> encode_latent(const LatentTensor& tensor);
/// Throws parse-error for a bad header or size, checksum-mismatch when the
/// trailing checksum does not match the payload.
LatentTensor decode_latent(std::span<const unsigned char> bytes);

/// FNV-1a 64 of the payload as it would be written.
std::uint64_t latent_checksum(const LatentTensor& tensor);

void write_latent_file(const std::filesystem::path& path,
                       const LatentTensor& tensor);
/// Throws io-error when the file cannot be read.
LatentTensor read_latent_file(const std::filesystem::path& path);

}  // namespace videomerge
