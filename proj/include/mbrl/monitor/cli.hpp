#pragma once

#include <string>
#include <vector>

namespace mbrl {

// Command-line surface:
//   run <config> [--seed S] [--out DIR] [--overwrite]
//   validate <config>
//   plot <run-dir> --keys k1,k2 [--out FILE] [--width W] [--height H]
//   inspect <run-dir>
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 runtime failure.
int cli_dispatch(const std::vector<std::string>& args);

}  // namespace mbrl
