// Copyright 2026 The VideoMerge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace videomerge::cli {

/// Entry point shared by the executable and the in-process tests.
/// Returns the process exit status: 0 on success, 1 on a runtime error
/// (reported on `err` as "error[<code>]: <message>"), 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace videomerge::cli
