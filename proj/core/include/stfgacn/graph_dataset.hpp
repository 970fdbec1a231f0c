#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "stfgacn/common.hpp"
#include "stfgacn/radar_sim.hpp"
#include "stfgacn/sample.hpp"

namespace stfgacn::graph {

/// Weighted radar graph with its first-order-convolution normalization
/// Ahat = I + D^{-1/2} A D^{-1/2}. D is the diagonal of weighted row sums;
/// zero-degree rows contribute only their identity term.
struct RadarGraph {
  Eigen::MatrixXd adjacency;             // A: symmetric, non-negative, zero diagonal
  Eigen::MatrixXd normalized_adjacency;  // Ahat
  Eigen::VectorXd degree;                // diag of D
  std::vector<int> subnet_ids;           // distinct subnet ids, ascending
  std::vector<std::vector<int>> subnets;  // node indices per subnet, same order
};

/// a_ij = 0.3 + 1/d_ij for equal carrier frequencies, 1/d_ij otherwise, with
/// d_ij in kilometers and a_ii = 0. Throws InvalidGeometry on coincident
/// radars or N < 2.
RadarGraph build_adjacency(const std::vector<sim::RadarConfig>& radars);

/// Ahat from an arbitrary symmetric non-negative A (zero-degree convention).
Eigen::MatrixXd normalized_adjacency(const Eigen::MatrixXd& adjacency);

/// Ahat of the node-induced subgraph: restrict A to the given nodes first,
/// then renormalize.
Eigen::MatrixXd restricted_normalized_adjacency(const Eigen::MatrixXd& adjacency,
                                                const std::vector<int>& nodes);

struct NormalizationStats {
  double min_dbsm = 0.0;
  double max_dbsm = 0.0;
};

/// x' = (x - min) / (max - min), elementwise over every signal matrix. When
/// stats is empty, min/max are fitted over the given samples and returned;
/// when provided, the stored stats are applied unchanged (no clipping).
/// Throws ConstantSignal when max == min on the fitting set.
NormalizationStats min_max_normalize(std::vector<GraphSample>& samples,
                                     std::optional<NormalizationStats> stats = std::nullopt);

inline double denormalize(double x, const NormalizationStats& stats) {
  return x * (stats.max_dbsm - stats.min_dbsm) + stats.min_dbsm;
}

struct DatasetSplit {
  std::vector<GraphSample> train;
  std::vector<GraphSample> test;
  std::vector<GraphSample> validation;
  std::optional<NormalizationStats> normalization_stats;
};

/// Stratified 7:2:1 split: per label, test and validation take floor(0.2 n)
/// and floor(0.1 n); the remainder goes to train. Shuffle order is a pure
/// function of the seed. Throws TooFewSamples below 10 samples.
DatasetSplit split_dataset(std::vector<GraphSample> samples, std::uint64_t seed);

/// Fits normalization on the train split and applies it to all three splits.
void normalize_split(DatasetSplit& split);

}  // namespace stfgacn::graph
