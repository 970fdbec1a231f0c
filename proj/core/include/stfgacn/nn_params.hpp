#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "stfgacn/common.hpp"

namespace stfgacn::nn {

enum class Init {
  kZero,
  kOne,
  kUniformFanIn,  // uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)]
};

struct ParamBlock {
  std::string name;
  int rows = 0;
  int cols = 0;
  int offset = 0;
  Init init = Init::kZero;
  int fan_in = 0;
};

/// Owns every trainable scalar of a model in one flat vector; layers hold
/// block ids and view their weights through maps. The flat layout is what the
/// optimizer, gradient checks, and checkpoints operate on. Blocks are
/// column-major within their flat segment.
class ParameterStore {
 public:
  int add(std::string name, int rows, int cols, Init init, int fan_in = 0);

  void finalize();
  bool finalized() const { return finalized_; }

  int size() const { return total_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const ParamBlock& block(int id) const { return blocks_.at(static_cast<std::size_t>(id)); }
  const std::vector<ParamBlock>& blocks() const { return blocks_; }

  Eigen::VectorXd& values() { return values_; }
  const Eigen::VectorXd& values() const { return values_; }

  /// View of block `id` inside any vector congruent with the flat layout.
  Eigen::Map<Eigen::MatrixXd> view(Eigen::VectorXd& storage, int id) const;
  Eigen::Map<const Eigen::MatrixXd> view(const Eigen::VectorXd& storage, int id) const;

  /// Per-block seeded initialization; a pure function of the seed.
  void initialize(std::uint64_t seed);

  /// Freshly initialized parameter vector without touching the owned values.
  Eigen::VectorXd make_initial(std::uint64_t seed) const;

 private:
  std::vector<ParamBlock> blocks_;
  Eigen::VectorXd values_;
  int total_ = 0;
  bool finalized_ = false;
};

}  // namespace stfgacn::nn
