#pragma once

#include <filesystem>
#include <memory>

#include "mbrl/dynamics/linear.hpp"
#include "mbrl/dynamics/mlp_dynamics.hpp"

namespace mbrl {

// Model checkpoints: a small header (kind, dims, normalization stats) over
// the textual parameter format, hex floats throughout, round-trip exact.
void save_model(const LinearDynamics& model, const std::filesystem::path& path);
void save_model(const MlpDynamics& model, const std::filesystem::path& path);
std::unique_ptr<DynamicsModel> load_model(const std::filesystem::path& path);

}  // namespace mbrl
