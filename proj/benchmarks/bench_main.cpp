// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

// Distro libbenchmark_main.a carries LTO bytecode tied to one compiler
// release, so the entry point lives here instead.
BENCHMARK_MAIN();
