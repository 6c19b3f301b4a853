// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "videomerge/error.hpp"
#include "videomerge/rng.hpp"

namespace videomerge::cli {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(Errc code, const YAML::Node& node,
                         const std::string& message) const {
    std::ostringstream os;
    os << source_ << ':' << (node.Mark().line + 1) << ": " << message;
    throw Error(code, os.str());
  }

  template <typename T>
  T scalar(const YAML::Node& node, const std::string& key) const {
    if (!node.IsScalar()) fail(Errc::parse_error, node, "key '" + key + "' expects a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(Errc::parse_error, node, "key '" + key + "' has invalid value '" +
                                        node.Scalar() + "'");
    }
  }

  std::size_t count(const YAML::Node& node, const std::string& key) const {
    const auto v = scalar<long long>(node, key);
    if (v < 0) fail(Errc::config_error, node, "key '" + key + "' must be non-negative");
    return static_cast<std::size_t>(v);
  }

  using Handler = std::function<void(const YAML::Node&)>;

  /// Dispatch every entry of a mapping; unknown keys are an error.
  void section(const YAML::Node& node, const std::string& name,
               const std::map<std::string, Handler>& handlers) const {
    if (!node.IsMap()) fail(Errc::parse_error, node, "'" + name + "' must be a mapping");
    for (const auto& entry : node) {
      const std::string key = entry.first.as<std::string>();
      auto it = handlers.find(key);
      if (it == handlers.end()) {
        fail(Errc::config_error, entry.first,
             "unknown key '" + key + "'" +
                 (name.empty() ? std::string() : " in section '" + name + "'"));
      }
      it->second(entry.second);
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

}  // namespace

std::string_view to_string(BlendMode mode) noexcept {
  return mode == BlendMode::time_ramp ? "time-ramp" : "literal-frequency-ramp";
}

BlendMode parse_blend_mode(std::string_view text) {
  if (text == "time-ramp") return BlendMode::time_ramp;
  if (text == "literal-frequency-ramp") return BlendMode::literal_frequency_ramp;
  throw Error(Errc::config_error, "unknown blend mode '" + std::string(text) +
                                      "' (expected time-ramp or literal-frequency-ramp)");
}

RunConfig parse_run_config(std::string_view text, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << (e.mark.line + 1) << ": " << e.msg;
    throw Error(Errc::parse_error, os.str());
  }
  const Reader r(source);
  if (!root.IsMap()) {
    throw Error(Errc::parse_error, std::string(source) + ":1: config must be a mapping");
  }

  RunConfig cfg;
  std::optional<int> version;
  NoiseInitConfig& noise = cfg.noise;
  auto& filter = noise.filter;

  r.section(root, "", {
      {"schema_version", [&](const YAML::Node& n) {
         version = r.scalar<int>(n, "schema_version");
         if (*version != kConfigSchemaVersion) {
           r.fail(Errc::config_error, n,
                  "schema_version " + std::to_string(*version) +
                      " is not supported (expected " +
                      std::to_string(kConfigSchemaVersion) + ")");
         }
       }},
      {"seed", [&](const YAML::Node& n) { noise.seed = r.scalar<std::uint64_t>(n, "seed"); }},
      {"latent", [&](const YAML::Node& n) {
         r.section(n, "latent", {
             {"batch", [&](const YAML::Node& v) { noise.batch = r.count(v, "batch"); }},
             {"channels", [&](const YAML::Node& v) { noise.channels = r.count(v, "channels"); }},
             {"height", [&](const YAML::Node& v) { noise.height = r.count(v, "height"); }},
             {"width", [&](const YAML::Node& v) { noise.width = r.count(v, "width"); }},
         });
       }},
      {"tiling", [&](const YAML::Node& n) {
         r.section(n, "tiling", {
             {"tile_frames", [&](const YAML::Node& v) { noise.tile_frames = r.count(v, "tile_frames"); }},
             {"overlap", [&](const YAML::Node& v) { noise.overlap = r.count(v, "overlap"); }},
             {"replication", [&](const YAML::Node& v) { noise.replication = r.count(v, "replication"); }},
         });
       }},
      {"noise_init", [&](const YAML::Node& n) {
         r.section(n, "noise_init", {
             {"max_merge", [&](const YAML::Node& v) { noise.max_merge = r.scalar<double>(v, "max_merge"); }},
             {"blend_mode", [&](const YAML::Node& v) {
                try {
                  noise.blend_mode = parse_blend_mode(r.scalar<std::string>(v, "blend_mode"));
                } catch (const Error& e) {
                  r.fail(Errc::config_error, v, e.what());
                }
              }},
             {"literal_weight_order", [&](const YAML::Node& v) {
                noise.literal_weight_order = r.scalar<bool>(v, "literal_weight_order");
              }},
             {"filter", [&](const YAML::Node& v) {
                r.section(v, "noise_init.filter", {
                    {"order", [&](const YAML::Node& x) { filter.order = r.scalar<int>(x, "order"); }},
                    {"temporal_cutoff", [&](const YAML::Node& x) { filter.temporal_cutoff = r.scalar<double>(x, "temporal_cutoff"); }},
                    {"spatial_cutoff", [&](const YAML::Node& x) { filter.spatial_cutoff = r.scalar<double>(x, "spatial_cutoff"); }},
                });
              }},
         });
       }},
      {"sampling", [&](const YAML::Node& n) {
         r.section(n, "sampling", {
             {"steps", [&](const YAML::Node& v) { cfg.steps = r.count(v, "steps"); }},
             {"parallel_tiles", [&](const YAML::Node& v) { cfg.execution.parallel = r.scalar<bool>(v, "parallel_tiles"); }},
             {"max_in_flight", [&](const YAML::Node& v) { cfg.execution.max_in_flight = r.count(v, "max_in_flight"); }},
         });
       }},
      {"condition", [&](const YAML::Node& n) {
         r.section(n, "condition", {
             {"prompt", [&](const YAML::Node& v) { cfg.prompt = r.scalar<std::string>(v, "prompt"); }},
             {"embedding_dim", [&](const YAML::Node& v) { cfg.embedding_dim = r.count(v, "embedding_dim"); }},
         });
       }},
      {"denoiser", [&](const YAML::Node& n) {
         r.section(n, "denoiser", {
             {"amplitude", [&](const YAML::Node& v) { cfg.denoiser.amplitude = r.scalar<double>(v, "amplitude"); }},
             {"seed", [&](const YAML::Node& v) { cfg.denoiser.seed = r.scalar<std::uint64_t>(v, "seed"); }},
         });
       }},
      {"metrics", [&](const YAML::Node& n) {
         r.section(n, "metrics", {
             {"tau", [&](const YAML::Node& v) {
                cfg.tau = r.scalar<double>(v, "tau");
                if (!(*cfg.tau > 0.0)) r.fail(Errc::config_error, v, "tau must be positive");
              }},
         });
       }},
      {"prompt_refine", [&](const YAML::Node& n) {
         r.section(n, "prompt_refine", {
             {"enabled", [&](const YAML::Node& v) { cfg.refine.enabled = r.scalar<bool>(v, "enabled"); }},
             {"category", [&](const YAML::Node& v) {
                try {
                  cfg.refine.category = parse_category(r.scalar<std::string>(v, "category"));
                } catch (const Error& e) {
                  r.fail(Errc::config_error, v, e.what());
                }
              }},
             {"timeout_ms", [&](const YAML::Node& v) { cfg.refine.timeout_ms = static_cast<std::int64_t>(r.count(v, "timeout_ms")); }},
             {"model", [&](const YAML::Node& v) { cfg.refine.model = r.scalar<std::string>(v, "model"); }},
             {"max_output_tokens", [&](const YAML::Node& v) { cfg.refine.max_output_tokens = r.count(v, "max_output_tokens"); }},
         });
       }},
  });

  if (!version) {
    throw Error(Errc::config_error,
                std::string(source) + ":1: missing required key 'schema_version'");
  }
  try {
    cfg.noise.validate();
    (void)cfg.layout();
    (void)build_schedule(cfg.steps);
    if (cfg.embedding_dim == 0) {
      throw Error(Errc::invalid_parameter, "embedding_dim must be positive");
    }
  } catch (const Error& e) {
    throw Error(Errc::config_error, std::string(source) + ": " + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string());
}

TileLayout RunConfig::layout() const {
  return TileLayout::create(noise.tile_frames, noise.overlap, noise.long_frames());
}

GenerationConfig RunConfig::generation(const Condition& condition) const {
  GenerationConfig g{layout(), build_schedule(steps), noise, condition, execution};
  g.validate();
  return g;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["seed"] = noise.seed;
  j["latent"] = {{"batch", noise.batch},
                 {"channels", noise.channels},
                 {"height", noise.height},
                 {"width", noise.width}};
  j["tiling"] = {{"tile_frames", noise.tile_frames},
                 {"overlap", noise.overlap},
                 {"replication", noise.replication}};
  j["noise_init"] = {
      {"max_merge", noise.max_merge},
      {"blend_mode", std::string(to_string(noise.blend_mode))},
      {"literal_weight_order", noise.literal_weight_order},
      {"filter",
       {{"order", noise.filter.order},
        {"temporal_cutoff", noise.filter.temporal_cutoff},
        {"spatial_cutoff", noise.filter.spatial_cutoff}}}};
  j["sampling"] = {{"steps", steps},
                   {"parallel_tiles", execution.parallel},
                   {"max_in_flight", execution.max_in_flight}};
  j["condition"] = {{"prompt", prompt}, {"embedding_dim", embedding_dim}};
  j["denoiser"] = {{"amplitude", denoiser.amplitude}, {"seed", denoiser.seed}};
  j["metrics"] = nlohmann::json::object();
  if (tau) j["metrics"]["tau"] = *tau;
  j["prompt_refine"] = {{"enabled", refine.enabled},
                        {"category", std::string(to_string(refine.category))},
                        {"timeout_ms", refine.timeout_ms},
                        {"model", refine.model},
                        {"max_output_tokens", refine.max_output_tokens}};
  return j;
}

std::string RunConfig::digest() const {
  // Execution settings do not change the output bits, so they stay out.
  nlohmann::json j = to_json();
  j["sampling"].erase("parallel_tiles");
  j["sampling"].erase("max_in_flight");
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(j.dump());
  return os.str();
}

}  // namespace videomerge::cli
