// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "videomerge/error.hpp"

namespace videomerge::cli {

std::string checksum_hex(std::uint64_t value) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << value;
  return os.str();
}

MetricReport video_metrics(const LatentTensor& video, const RunConfig& cfg) {
  MetricReport report;
  report.seed = cfg.noise.seed;
  report.config_digest = cfg.digest();
  const PatchStatsExtractor extractor;
  report.values["flicker"] = temporal_flicker(video);
  report.values["subject_consistency"] = pairwise_consistency(video, extractor);
  if (cfg.tau) {
    report.values["identity_consistency"] =
        identity_consistency(video, extractor, *cfg.tau);
    std::ostringstream os;
    os << *cfg.tau;
    report.provenance["tau"] = os.str();
  }
  try {
    const TileLayout layout = TileLayout::create(
        cfg.noise.tile_frames, cfg.noise.overlap, video.shape().frames);
    report.values["low_freq_similarity"] =
        low_freq_similarity(video, layout, cfg.noise.filter);
  } catch (const Error& e) {
    report.provenance["low_freq_similarity"] = std::string("skipped: ") + e.what();
  }
  return report;
}

nlohmann::json to_json(const MetricReport& report) {
  nlohmann::json j;
  j["metrics"] = nlohmann::json::object();
  for (const auto& [k, v] : report.values) j["metrics"][k] = v;
  j["seed"] = report.seed;
  j["config_digest"] = report.config_digest;
  j["provenance"] = nlohmann::json::object();
  for (const auto& [k, v] : report.provenance) j["provenance"][k] = v;
  return j;
}

nlohmann::json to_json(const RefinedPrompt& refined) {
  nlohmann::json j = {{"original", refined.original},
                      {"refined", refined.refined},
                      {"source", std::string(to_string(refined.source))},
                      {"attributes", refined.attributes}};
  if (!refined.warning.empty()) j["warning"] = refined.warning;
  return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot open '" + path.string() + "' for writing");
  out << doc.dump(2) << '\n';
  if (!out) throw Error(Errc::io_error, "write to '" + path.string() + "' failed");
}

}  // namespace videomerge::cli
