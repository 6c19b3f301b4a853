// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "videomerge/noise_init.hpp"
#include "videomerge/prompt_refine.hpp"
#include "videomerge/sampling.hpp"

namespace videomerge::cli {

inline constexpr int kConfigSchemaVersion = 1;

struct DenoiserSettings {
  double amplitude = 0.5;
  std::uint64_t seed = 0;
};

struct RefineSettings {
  bool enabled = false;
  PromptCategory category = PromptCategory::human;
  std::int64_t timeout_ms = 10000;
  std::string model = "default";
  std::size_t max_output_tokens = 256;
};

/// Everything a run needs, loaded from a YAML document:
///
///   schema_version: 1
///   seed: 7
///   latent:        {batch, channels, height, width}
///   tiling:        {tile_frames, overlap, replication}
///   noise_init:    {max_merge, blend_mode, literal_weight_order,
///                   filter: {order, temporal_cutoff, spatial_cutoff}}
///   sampling:      {steps, parallel_tiles, max_in_flight}
///   condition:     {prompt, embedding_dim}
///   denoiser:      {amplitude, seed}
///   metrics:       {tau}
///   prompt_refine: {enabled, category, timeout_ms, model, max_output_tokens}
///
/// Every section and key is optional except schema_version; unknown keys
/// are rejected.
struct RunConfig {
  NoiseInitConfig noise{};
  std::size_t steps = 30;
  TileExecution execution{};
  std::string prompt;
  std::size_t embedding_dim = 16;
  DenoiserSettings denoiser{};
  std::optional<double> tau;
  RefineSettings refine{};

  GenerationConfig generation(const Condition& condition) const;
  TileLayout layout() const;

  nlohmann::json to_json() const;
  /// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
  std::string digest() const;
};

/// Throws parse-error (malformed YAML, bad value type) or config-error
/// (unknown key, schema mismatch, invalid value); messages start with
/// "<source>:<line>:".
RunConfig parse_run_config(std::string_view text,
                           std::string_view source = "<config>");
RunConfig load_run_config(const std::filesystem::path& path);

std::string_view to_string(BlendMode mode) noexcept;
BlendMode parse_blend_mode(std::string_view text);

}  // namespace videomerge::cli
