// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace videomerge {

enum class Errc {
  invalid_shape,
  invalid_parameter,
  index_out_of_range,
  non_real_result,
  incomplete_predictions,
  denoiser_failure,
  insufficient_frames,
  insufficient_windows,
  invalid_input,
  io_error,
  parse_error,
  checksum_mismatch,
  config_error,
  refiner_failure,
};

/// Stable machine-readable name, e.g. "invalid-shape".
std::string_view to_string(Errc code) noexcept;

/// The single exception type thrown by the library. The code is the
/// machine-parseable part; what() carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace videomerge
