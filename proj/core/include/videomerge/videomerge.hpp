// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "videomerge/denoisers.hpp"
#include "videomerge/error.hpp"
#include "videomerge/fft.hpp"
#include "videomerge/frequency_mask.hpp"
#include "videomerge/fusion.hpp"
#include "videomerge/latent_file.hpp"
#include "videomerge/metrics.hpp"
#include "videomerge/noise_init.hpp"
#include "videomerge/prompt_refine.hpp"
#include "videomerge/rng.hpp"
#include "videomerge/sampling.hpp"
#include "videomerge/tensor.hpp"
