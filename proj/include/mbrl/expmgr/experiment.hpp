#pragma once

#include <filesystem>
#include <optional>

#include "mbrl/expmgr/config.hpp"

namespace mbrl {

struct RunOptions {
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  bool overwrite = false;
};

// Builds environment -> algorithm (+ dynamics model) -> agent -> flow from a
// validated config, runs the flow to its stop condition, and writes the
// result directory:
//   config.echo    normalized config (re-parseable)
//   records/*.csv  one file per recorded key
//   report.json    final run report
//   log.txt        event log
// Refuses to overwrite a directory holding a completed run (report.json)
// unless overwrite is set. Component RNG streams are forked from the seed
// by the stable stream enumeration. Returns the result directory.
std::filesystem::path experiment_run(const ExperimentConfig& config,
                                     const RunOptions& options = {});

}  // namespace mbrl
