#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stfgacn/nn_model.hpp"

namespace stfgacn::io {

// Checkpoint file layout (documented byte-exact):
//   bytes 0..7    magic "STFGCKP1"
//   bytes 8..15   little-endian u64: JSON header length H
//   bytes 16..16+H-1  UTF-8 JSON header: format_version, variant, model
//                 config, lane indices, parameter block table (name, rows,
//                 cols, offset; column-major within the flat segment),
//                 param_count, seed, hyperparameters
//   then          param_count little-endian IEEE-754 doubles (the flat
//                 parameter vector)
inline constexpr char kCheckpointMagic[8] = {'S', 'T', 'F', 'G', 'C', 'K', 'P', '1'};

struct Checkpoint {
  nn::ModelConfig model_config;
  std::vector<int> lanes;
  Eigen::VectorXd params;
  std::uint64_t seed = 0;
  std::map<std::string, double> hyperparameters;
};

void write_checkpoint(const std::filesystem::path& file, const nn::Model& model,
                      const Eigen::VectorXd& params, const std::vector<int>& lanes,
                      std::uint64_t seed, const std::map<std::string, double>& hyperparameters);

Checkpoint read_checkpoint(const std::filesystem::path& file);

}  // namespace stfgacn::io
