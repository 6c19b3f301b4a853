// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "videomerge/tensor.hpp"

namespace videomerge {

/// How ifft3 treats the imaginary part left after the inverse transform.
enum class ImaginaryResidue {
  /// Fail with non-real-result if max|imag| > 1e-4 * max|real|.
  check,
  /// Keep the real part unconditionally.
  discard,
};

/// Relative tolerance used by ImaginaryResidue::check.
inline constexpr double kMaxImaginaryResidue = 1e-4;

/// Unnormalized forward DFT over (frame, height, width) of every
/// (batch, channel) slab.
ComplexTensor fft3(const LatentTensor& x);
ComplexTensor fft3(const ComplexTensor& x);

/// Inverse of fft3, carrying the 1/(F*H*W) factor.
LatentTensor ifft3(const ComplexTensor& x,
                   ImaginaryResidue residue = ImaginaryResidue::check);
ComplexTensor ifft3_complex(const ComplexTensor& x);

}  // namespace videomerge
