// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "run_config.hpp"
#include "videomerge/metrics.hpp"
#include "videomerge/prompt_refine.hpp"

namespace videomerge::cli {

std::string checksum_hex(std::uint64_t value);

/// Single-video metrics: flicker, subject consistency, identity consistency
/// (when tau is known) and cross-tile low-frequency similarity (when the
/// video length matches the configured tiling with two disjoint tiles).
MetricReport video_metrics(const LatentTensor& video, const RunConfig& cfg);

nlohmann::json to_json(const MetricReport& report);
nlohmann::json to_json(const RefinedPrompt& refined);

/// Write `doc` pretty-printed; throws io-error.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace videomerge::cli
