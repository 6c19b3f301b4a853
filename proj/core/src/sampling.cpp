// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/sampling.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

#include "videomerge/error.hpp"
#include "videomerge/rng.hpp"

namespace videomerge {

void SigmaSchedule::validate() const {
  if (sigmas.size() < 2) {
    throw Error(Errc::invalid_parameter, "schedule needs at least one step");
  }
  for (std::size_t i = 1; i < sigmas.size(); ++i) {
    if (!(sigmas[i] < sigmas[i - 1])) {
      throw Error(Errc::invalid_parameter,
                  "schedule is not strictly decreasing at index " +
                      std::to_string(i));
    }
  }
  if (sigmas.back() != 0.0) {
    throw Error(Errc::invalid_parameter, "schedule must end at sigma = 0");
  }
}

SigmaSchedule build_schedule(std::size_t steps) {
  if (steps == 0) {
    throw Error(Errc::invalid_parameter, "schedule needs at least one step");
  }
  SigmaSchedule s;
  s.sigmas.resize(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    s.sigmas[i] = 1.0 - static_cast<double>(i) / static_cast<double>(steps);
  }
  s.sigmas.back() = 0.0;
  return s;
}

LatentTensor euler_step(const LatentTensor& x, const LatentTensor& velocity,
                        double sigma_cur, double sigma_next) {
  if (x.shape() != velocity.shape()) {
    throw Error(Errc::invalid_shape, "euler_step: latent " +
                                         x.shape().to_string() +
                                         " vs velocity " +
                                         velocity.shape().to_string());
  }
  const double dt = sigma_next - sigma_cur;
  LatentTensor out(x.shape());
  auto src = x.data();
  auto v = velocity.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = static_cast<float>(static_cast<double>(src[i]) +
                                dt * static_cast<double>(v[i]));
  }
  return out;
}

Condition embed_prompt(std::string_view prompt, std::size_t dimension) {
  if (dimension == 0) {
    throw Error(Errc::invalid_parameter, "embedding dimension must be positive");
  }
  Condition c;
  c.prompt = std::string(prompt);
  c.embedding.assign(dimension, 0.0f);
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    const std::uint64_t h = splitmix64(fnv1a64(word));
    const std::size_t slot = h % dimension;
    c.embedding[slot] += (h >> 63) ? -1.0f : 1.0f;
    word.clear();
  };
  for (char ch : prompt) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else {
      flush();
    }
  }
  flush();
  double norm = 0.0;
  for (float v : c.embedding) norm += static_cast<double>(v) * v;
  if (norm > 0.0) {
    const double inv = 1.0 / std::sqrt(norm);
    for (float& v : c.embedding) v = static_cast<float>(v * inv);
  }
  return c;
}

namespace {

LatentTensor evaluate_tile(const LatentTensor& x_long, std::size_t tile,
                           double sigma, const Denoiser& denoiser,
                           const TileLayout& layout,
                           const Condition& condition) {
  const TileContext ctx{tile, layout.tile_begin(tile)};
  const LatentTensor input = x_long.slice_frames(ctx.frame_begin,
                                                 layout.tile_length());
  LatentTensor out = denoiser.predict(input, sigma, condition, ctx);
  if (out.shape() != input.shape()) {
    throw Error(Errc::denoiser_failure,
                "returned shape " + out.shape().to_string() + " for input " +
                    input.shape().to_string());
  }
  if (!out.all_finite()) {
    throw Error(Errc::denoiser_failure, "returned non-finite values");
  }
  return out;
}

[[noreturn]] void rethrow_wrapped(std::exception_ptr error, std::size_t tile,
                                  double sigma, const Denoiser& denoiser) {
  std::ostringstream os;
  os << "denoiser '" << denoiser.name() << "' failed on tile " << tile
     << " at sigma " << sigma << ": ";
  try {
    std::rethrow_exception(error);
  } catch (const std::exception& e) {
    os << e.what();
  } catch (...) {
    os << "unknown exception";
  }
  throw Error(Errc::denoiser_failure, os.str());
}

std::size_t in_flight_limit(const TileExecution& execution,
                            const Denoiser& denoiser) {
  if (!execution.parallel || !denoiser.concurrent()) return 1;
  if (execution.max_in_flight > 0) return execution.max_in_flight;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

LatentTensor denoise_step_tiled(const LatentTensor& x_long, double sigma_cur,
                                double sigma_next, const Denoiser& denoiser,
                                const TileLayout& layout,
                                const Condition& condition,
                                const TileExecution& execution) {
  if (x_long.shape().frames != layout.long_length()) {
    throw Error(Errc::invalid_shape,
                "latent has " + std::to_string(x_long.shape().frames) +
                    " frames, layout expects " +
                    std::to_string(layout.long_length()));
  }
  const std::size_t m = layout.tile_count();
  const std::size_t batch = std::min(m, in_flight_limit(execution, denoiser));
  FusionAccumulator fused(layout,
                          x_long.shape().with_frames(layout.tile_length()));

  std::vector<std::optional<LatentTensor>> slots(batch);
  std::vector<std::exception_ptr> errors(batch);
  for (std::size_t first = 0; first < m; first += batch) {
    const std::size_t count = std::min(batch, m - first);
    auto run = [&](std::size_t k) {
      try {
        slots[k] = evaluate_tile(x_long, first + k, sigma_cur, denoiser,
                                 layout, condition);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    };
    if (count == 1) {
      run(0);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(count);
      for (std::size_t k = 0; k < count; ++k) workers.emplace_back(run, k);
    }
    // Consume in ascending tile order; this is the only place results meet.
    for (std::size_t k = 0; k < count; ++k) {
      if (errors[k]) rethrow_wrapped(errors[k], first + k, sigma_cur, denoiser);
      fused.add(first + k, *slots[k]);
      slots[k].reset();
    }
  }
  return euler_step(x_long, fused.finish(), sigma_cur, sigma_next);
}

void GenerationConfig::validate() const {
  noise.validate();
  schedule.validate();
  if (layout.long_length() != noise.long_frames()) {
    throw Error(Errc::invalid_parameter,
                "layout spans " + std::to_string(layout.long_length()) +
                    " frames but the long noise has " +
                    std::to_string(noise.long_frames()));
  }
  if (layout.tile_length() != noise.tile_frames) {
    throw Error(Errc::invalid_parameter,
                "layout tile length differs from the noise tile length");
  }
}

LatentTensor generate_from(LatentTensor initial, const GenerationConfig& cfg,
                           const Denoiser& denoiser) {
  cfg.schedule.validate();
  LatentTensor x = std::move(initial);
  const auto& sigmas = cfg.schedule.sigmas;
  for (std::size_t i = 0; i + 1 < sigmas.size(); ++i) {
    x = denoise_step_tiled(x, sigmas[i], sigmas[i + 1], denoiser, cfg.layout,
                           cfg.condition, cfg.execution);
  }
  return x;
}

LatentTensor generate(const GenerationConfig& cfg, const Denoiser& denoiser) {
  cfg.validate();
  return generate_from(init_long_noise(cfg.noise), cfg, denoiser);
}

}  // namespace videomerge
