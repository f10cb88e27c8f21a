#pragma once

#include <filesystem>
#include <iosfwd>

#include "mbrl/fapprox/mlp.hpp"

namespace mbrl {

// Textual parameter file: a shape header followed by one parameter per line
// as a C99 hex float, so save -> load round-trips are bit-exact.
//
//   mbrl-mlp v1
//   sizes 4 64 64 2
//   activation relu
//   params 4610
//   0x1.5a3...p-3
//   ...
void save_mlp(const Mlp& net, const std::filesystem::path& path);
Mlp load_mlp(const std::filesystem::path& path);

// Stream variants used by composite formats (model checkpoints).
void write_mlp(const Mlp& net, std::ostream& out);
Mlp read_mlp(std::istream& in, const std::string& context);

}  // namespace mbrl
