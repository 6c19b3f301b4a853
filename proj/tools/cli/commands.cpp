// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "report.hpp"
#include "run_config.hpp"
#include "videomerge/denoisers.hpp"
#include "videomerge/error.hpp"
#include "videomerge/latent_file.hpp"
#include "videomerge/metrics.hpp"
#include "videomerge/noise_init.hpp"
#include "videomerge/prompt_refine.hpp"

namespace videomerge::cli {

namespace {

constexpr const char* kToolVersion = VIDEOMERGE_VERSION;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

/// Flags that mirror config keys. Set flags override the file.
struct Overrides {
  std::uint64_t seed = 0;
  std::size_t tile_frames = 0, overlap = 0, replication = 0, steps = 0;
  std::size_t parallel_tiles = 0;
  double max_merge = 0.0, tau = 0.0, amplitude = 0.0;
  std::string blend_mode, prompt;
  std::vector<CLI::Option*> options;

  void attach(CLI::App& app, bool sampling) {
    options.push_back(app.add_option("--seed", seed, "Override seed"));
    options.push_back(app.add_option("--tile-frames", tile_frames, "Override tiling.tile_frames"));
    options.push_back(app.add_option("--overlap", overlap, "Override tiling.overlap"));
    options.push_back(app.add_option("--replication", replication, "Override tiling.replication"));
    options.push_back(app.add_option("--max-merge", max_merge, "Override noise_init.max_merge"));
    options.push_back(app.add_option("--blend-mode", blend_mode, "time-ramp | literal-frequency-ramp"));
    if (sampling) {
      options.push_back(app.add_option("--steps", steps, "Override sampling.steps"));
      options.push_back(app.add_option(
          "--parallel-tiles", parallel_tiles,
          "Evaluate up to N tiles concurrently (0 = sequential)"));
      options.push_back(app.add_option("--prompt", prompt, "Override condition.prompt"));
      options.push_back(app.add_option("--amplitude", amplitude, "Override denoiser.amplitude"));
    }
  }

  bool given(const char* name) const {
    for (auto* o : options) {
      if (o->check_name(name)) return o->count() > 0;
    }
    return false;
  }

  void apply(RunConfig& cfg) const {
    if (given("--seed")) cfg.noise.seed = seed;
    if (given("--tile-frames")) cfg.noise.tile_frames = tile_frames;
    if (given("--overlap")) cfg.noise.overlap = overlap;
    if (given("--replication")) cfg.noise.replication = replication;
    if (given("--max-merge")) cfg.noise.max_merge = max_merge;
    if (given("--blend-mode")) cfg.noise.blend_mode = parse_blend_mode(blend_mode);
    if (given("--steps")) cfg.steps = steps;
    if (given("--parallel-tiles")) {
      cfg.execution.parallel = parallel_tiles > 0;
      cfg.execution.max_in_flight = parallel_tiles;
    }
    if (given("--prompt")) cfg.prompt = prompt;
    if (given("--amplitude")) cfg.denoiser.amplitude = amplitude;
    try {
      cfg.noise.validate();
      (void)cfg.layout();
      (void)build_schedule(cfg.steps);
    } catch (const Error& e) {
      throw Error(Errc::config_error, std::string("after flag overrides: ") + e.what());
    }
  }
};

RunConfig resolve_config(const std::string& path, const Overrides& overrides) {
  RunConfig cfg = path.empty() ? RunConfig{} : load_run_config(path);
  overrides.apply(cfg);
  return cfg;
}

std::map<std::string, std::string> load_fixtures(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open fixtures '" + path + "'");
  const auto doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(Errc::parse_error, path + ": fixtures must be a JSON object of prompt -> response");
  }
  std::map<std::string, std::string> fixtures;
  for (const auto& [k, v] : doc.items()) {
    if (!v.is_string()) {
      throw Error(Errc::parse_error, path + ": fixture '" + k + "' is not a string");
    }
    fixtures[k] = v.get<std::string>();
  }
  return fixtures;
}

std::unique_ptr<RefinerClient> make_refiner(const RefineSettings& settings,
                                            const std::string& fixtures) {
  if (auto opts = http_options_from_env()) {
    opts->model = settings.model;
    opts->max_output_tokens = settings.max_output_tokens;
    opts->timeout = std::chrono::milliseconds(settings.timeout_ms);
    return std::make_unique<HttpRefinerClient>(*opts);
  }
  return stub_client(load_fixtures(fixtures));
}

void print_written(std::ostream& out, const std::string& path,
                   const LatentTensor& t) {
  out << "wrote " << path << " shape " << t.shape().to_string() << " checksum "
      << checksum_hex(latent_checksum(t)) << '\n';
}

// ---- init-noise ----------------------------------------------------------

struct InitNoiseArgs {
  std::string config, output;
  Overrides overrides;
};

void cmd_init_noise(const InitNoiseArgs& a, std::ostream& out) {
  const RunConfig cfg = resolve_config(a.config, a.overrides);
  const LatentTensor noise = init_long_noise(cfg.noise);
  write_latent_file(a.output, noise);
  print_written(out, a.output, noise);
}

// ---- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string config, output, denoiser = "zero", target, fixtures;
  Overrides overrides;
};

std::unique_ptr<Denoiser> make_denoiser(const GenerateArgs& a,
                                        const RunConfig& cfg,
                                        nlohmann::json& provenance) {
  provenance["name"] = a.denoiser;
  if (a.denoiser == "zero") return std::make_unique<ZeroDenoiser>();
  if (a.denoiser != "oracle" && a.denoiser != "perturbed") {
    throw Error(Errc::config_error, "unknown denoiser '" + a.denoiser +
                                        "' (expected zero, oracle or perturbed)");
  }
  if (a.target.empty()) {
    throw Error(Errc::config_error,
                "denoiser '" + a.denoiser + "' needs a target latent (--target)");
  }
  LatentTensor target = read_latent_file(a.target);
  if (target.shape() != cfg.noise.long_shape()) {
    throw Error(Errc::config_error,
                "target shape " + target.shape().to_string() +
                    " does not match the configured long latent " +
                    cfg.noise.long_shape().to_string());
  }
  provenance["target"] = a.target;
  provenance["target_checksum"] = checksum_hex(latent_checksum(target));
  if (a.denoiser == "oracle") {
    return std::make_unique<GlobalTargetOracle>(std::move(target));
  }
  provenance["amplitude"] = cfg.denoiser.amplitude;
  provenance["seed"] = cfg.denoiser.seed;
  return std::make_unique<PerturbedOracle>(std::move(target),
                                           cfg.denoiser.amplitude,
                                           cfg.denoiser.seed);
}

void cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve_config(a.config, a.overrides);
  nlohmann::json manifest;
  manifest["tool"] = "videomerge";
  manifest["tool_version"] = kToolVersion;
  manifest["command"] = "generate";
  manifest["config_digest"] = cfg.digest();
  manifest["seed"] = cfg.noise.seed;
  manifest["config"] = cfg.to_json();

  std::string prompt = cfg.prompt;
  manifest["refined_prompt"] = nullptr;
  if (cfg.refine.enabled && !prompt.empty()) {
    auto client = make_refiner(cfg.refine, a.fixtures);
    const RefinedPrompt refined = refine(prompt, cfg.refine.category, *client);
    if (!refined.warning.empty()) err << "warning: " << refined.warning << '\n';
    manifest["refined_prompt"] = to_json(refined);
    prompt = refined.refined;
  }
  const Condition condition = embed_prompt(prompt, cfg.embedding_dim);
  const GenerationConfig gen = cfg.generation(condition);

  nlohmann::json denoiser_info;
  const auto denoiser = make_denoiser(a, cfg, denoiser_info);
  manifest["denoiser"] = denoiser_info;

  auto t0 = Clock::now();
  LatentTensor x = init_long_noise(gen.noise);
  manifest["timings_ms"]["init_noise"] = elapsed_ms(t0);
  manifest["init_checksum"] = checksum_hex(latent_checksum(x));

  t0 = Clock::now();
  x = generate_from(std::move(x), gen, *denoiser);
  manifest["timings_ms"]["sampling"] = elapsed_ms(t0);

  t0 = Clock::now();
  write_latent_file(a.output, x);
  manifest["timings_ms"]["write"] = elapsed_ms(t0);

  t0 = Clock::now();
  manifest["metrics"] = to_json(video_metrics(x, cfg))["metrics"];
  manifest["timings_ms"]["metrics"] = elapsed_ms(t0);
  manifest["outputs"] = {{{"path", a.output},
                          {"checksum", checksum_hex(latent_checksum(x))}}};
  const std::string manifest_path = a.output + ".manifest.json";
  write_json(manifest_path, manifest);
  print_written(out, a.output, x);
  out << "manifest " << manifest_path << '\n';
}

// ---- metrics -------------------------------------------------------------

struct MetricsArgs {
  std::string input, config, reference, diff, report;
  double tau = 0.0;
  CLI::Option* tau_opt = nullptr;
};

void cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  const LatentTensor video = read_latent_file(a.input);
  nlohmann::json doc;
  if (!a.diff.empty()) {
    const LatentTensor other = read_latent_file(a.diff);
    doc["mode"] = "diff";
    doc["inputs"] = {a.input, a.diff};
    doc["max_abs_diff"] = max_abs_diff(video, other);
  } else {
    RunConfig cfg = a.config.empty() ? RunConfig{} : load_run_config(a.config);
    if (a.tau_opt->count() > 0) {
      if (!(a.tau > 0.0)) throw Error(Errc::invalid_parameter, "--tau must be positive");
      cfg.tau = a.tau;
    }
    if (!cfg.tau) {
      throw Error(Errc::config_error,
                  "identity consistency needs a tolerance: set metrics.tau or pass --tau");
    }
    MetricReport report = video_metrics(video, cfg);
    if (!a.reference.empty()) {
      const LatentTensor ref = read_latent_file(a.reference);
      const PatchStatsExtractor extractor;
      report.values["frechet_distance"] = frechet_distance(
          embed_frames(video, extractor), embed_frames(ref, extractor));
      report.provenance["reference"] = a.reference;
    }
    report.provenance["input"] = a.input;
    report.provenance["input_checksum"] = checksum_hex(latent_checksum(video));
    doc = to_json(report);
    doc["mode"] = "report";
  }
  if (a.report.empty()) {
    out << doc.dump(2) << '\n';
  } else {
    write_json(a.report, doc);
    out << "wrote " << a.report << '\n';
  }
}

// ---- weights -------------------------------------------------------------

struct WeightsArgs {
  std::size_t tile = 16, overlap = 12, length = 112;
};

void cmd_weights(const WeightsArgs& a, std::ostream& out) {
  const TileLayout layout = TileLayout::create(a.tile, a.overlap, a.length);
  const auto table = weight_table(layout);
  out << "# frame\ttile:weight ... (n=" << a.tile << " o=" << a.overlap
      << " L=" << a.length << " tiles=" << layout.tile_count() << ")\n";
  std::ostringstream row;
  row << std::setprecision(17);
  for (std::size_t t = 0; t < table.size(); ++t) {
    row.str("");
    row << t;
    for (const auto& e : table[t]) row << '\t' << e.tile << ':' << e.weight;
    out << row.str() << '\n';
  }
}

// ---- refine-prompt -------------------------------------------------------

struct RefineArgs {
  std::string prompt, category = "human", fixtures, model = "default";
  std::int64_t timeout_ms = 10000;
  bool json = false;
};

void cmd_refine_prompt(const RefineArgs& a, std::ostream& out, std::ostream& err) {
  RefineSettings settings;
  settings.category = parse_category(a.category);
  settings.timeout_ms = a.timeout_ms;
  settings.model = a.model;
  auto client = make_refiner(settings, a.fixtures);
  const RefinedPrompt r = refine(a.prompt, settings.category, *client);
  if (!r.warning.empty()) err << "warning: " << r.warning << '\n';
  if (a.json) {
    out << to_json(r).dump(2) << '\n';
    return;
  }
  out << "original: " << r.original << '\n'
      << "refined: " << r.refined << '\n'
      << "source: " << to_string(r.source) << '\n';
  for (const auto& [k, v] : r.attributes) out << "attribute." << k << ": " << v << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Tiled long-video latent generation toolkit", "videomerge"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  InitNoiseArgs init_args;
  auto* init = app.add_subcommand("init-noise", "Build a long initial noise latent");
  init->add_option("--config,-c", init_args.config, "Run config (YAML)");
  init->add_option("--output,-o", init_args.output, "Output VMLT file")->required();
  init_args.overrides.attach(*init, false);

  GenerateArgs gen_args;
  auto* gen = app.add_subcommand("generate", "Run tiled sampling with a reference denoiser");
  gen->add_option("--config,-c", gen_args.config, "Run config (YAML)");
  gen->add_option("--output,-o", gen_args.output, "Output VMLT file")->required();
  gen->add_option("--denoiser,-d", gen_args.denoiser, "zero | oracle | perturbed")
      ->capture_default_str();
  gen->add_option("--target,-t", gen_args.target, "Target VMLT for oracle denoisers");
  gen->add_option("--fixtures", gen_args.fixtures, "Stub refiner fixtures (JSON)");
  gen_args.overrides.attach(*gen, true);

  MetricsArgs met_args;
  auto* met = app.add_subcommand("metrics", "Compute metrics or diff latent files");
  met->add_option("input", met_args.input, "Input VMLT file")->required();
  met->add_option("--config,-c", met_args.config, "Run config (YAML)");
  met->add_option("--reference", met_args.reference, "Reference VMLT for the Frechet distance");
  met->add_option("--diff", met_args.diff, "Report max |input - other| only");
  met->add_option("--report,-r", met_args.report, "Write the report here instead of stdout");
  met_args.tau_opt = met->add_option("--tau", met_args.tau, "Identity consistency tolerance");

  WeightsArgs w_args;
  auto* weights = app.add_subcommand("weights", "Print the per-frame fusion weight table");
  weights->add_option("--tile,-n", w_args.tile, "Tile length")->capture_default_str();
  weights->add_option("--overlap,-o", w_args.overlap, "Overlap")->capture_default_str();
  weights->add_option("--length,-L", w_args.length, "Long length")->capture_default_str();

  RefineArgs r_args;
  auto* ref = app.add_subcommand("refine-prompt", "Enrich a prompt with visual detail");
  ref->add_option("prompt", r_args.prompt, "Prompt text")->required();
  ref->add_option("--category", r_args.category, "human | animal | landscape")
      ->capture_default_str();
  ref->add_option("--fixtures", r_args.fixtures, "Stub fixtures (JSON object)");
  ref->add_option("--timeout-ms", r_args.timeout_ms, "Remote timeout")->capture_default_str();
  ref->add_option("--model", r_args.model, "Remote model name")->capture_default_str();
  ref->add_flag("--json", r_args.json, "Print JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*init) cmd_init_noise(init_args, out);
    if (*gen) cmd_generate(gen_args, out, err);
    if (*met) cmd_metrics(met_args, out);
    if (*weights) cmd_weights(w_args, out);
    if (*ref) cmd_refine_prompt(r_args, out, err);
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& c : msg) {
      if (c == '\n') c = ' ';
    }
    err << "error[" << to_string(e.code()) << "]: " << msg << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace videomerge::cli
