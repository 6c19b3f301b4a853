// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include "videomerge/error.hpp"

namespace videomerge {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_shape: return "invalid-shape";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::non_real_result: return "non-real-result";
    case Errc::incomplete_predictions: return "incomplete-predictions";
    case Errc::denoiser_failure: return "denoiser-failure";
    case Errc::insufficient_frames: return "insufficient-frames";
    case Errc::insufficient_windows: return "insufficient-windows";
    case Errc::invalid_input: return "invalid-input";
    case Errc::io_error: return "io-error";
    case Errc::parse_error: return "parse-error";
    case Errc::checksum_mismatch: return "checksum-mismatch";
    case Errc::config_error: return "config-error";
    case Errc::refiner_failure: return "refiner-failure";
  }
  return "unknown";
}

}  // namespace videomerge
