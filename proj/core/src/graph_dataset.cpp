#include "stfgacn/graph_dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "stfgacn/rng.hpp"

namespace stfgacn::graph {

Eigen::MatrixXd normalized_adjacency(const Eigen::MatrixXd& adjacency) {
  const Eigen::Index n = adjacency.rows();
  Eigen::VectorXd inv_sqrt_degree(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = adjacency.row(i).sum();
    inv_sqrt_degree(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Eigen::MatrixXd ahat = Eigen::MatrixXd::Identity(n, n);
  ahat += inv_sqrt_degree.asDiagonal() * adjacency * inv_sqrt_degree.asDiagonal();
  return ahat;
}

Eigen::MatrixXd restricted_normalized_adjacency(const Eigen::MatrixXd& adjacency,
                                                const std::vector<int>& nodes) {
  const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXd sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      sub(i, j) = adjacency(nodes[static_cast<std::size_t>(i)],
                            nodes[static_cast<std::size_t>(j)]);
    }
  }
  return normalized_adjacency(sub);
}

RadarGraph build_adjacency(const std::vector<sim::RadarConfig>& radars) {
  const int n = static_cast<int>(radars.size());
  if (n < 2) {
    throw InvalidGeometry("graph construction requires at least two radars");
  }

  RadarGraph graph;
  graph.adjacency = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d_km = (radars[i].position - radars[j].position).norm() / 1000.0;
      if (!(d_km > 0.0)) {
        throw InvalidGeometry("coincident radars in layout");
      }
      const bool same_frequency =
          radars[i].carrier_frequency_hz == radars[j].carrier_frequency_hz;
      const double weight = (same_frequency ? 0.3 : 0.0) + 1.0 / d_km;
      graph.adjacency(i, j) = weight;
      graph.adjacency(j, i) = weight;
    }
  }

  graph.degree = graph.adjacency.rowwise().sum();
  graph.normalized_adjacency = normalized_adjacency(graph.adjacency);

  std::map<int, std::vector<int>> by_subnet;
  for (int i = 0; i < n; ++i) {
    by_subnet[radars[i].subnet_id].push_back(i);
  }
  for (auto& [subnet_id, nodes] : by_subnet) {
    graph.subnet_ids.push_back(subnet_id);
    graph.subnets.push_back(std::move(nodes));
  }
  return graph;
}

NormalizationStats min_max_normalize(std::vector<GraphSample>& samples,
                                     std::optional<NormalizationStats> stats) {
  NormalizationStats fitted;
  if (stats) {
    fitted = *stats;
  } else {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const GraphSample& s : samples) {
      lo = std::min(lo, s.signals.minCoeff());
      hi = std::max(hi, s.signals.maxCoeff());
    }
    if (!(hi > lo)) {
      throw ConstantSignal("min-max normalization undefined: max equals min");
    }
    fitted.min_dbsm = lo;
    fitted.max_dbsm = hi;
  }
  const double scale = 1.0 / (fitted.max_dbsm - fitted.min_dbsm);
  for (GraphSample& s : samples) {
    s.signals = (s.signals.array() - fitted.min_dbsm) * scale;
  }
  return fitted;
}

namespace {

// Global split sizes are floor(n/5) and floor(n/10) with the remainder in
// train. Per class the same floors apply; the deficit against the global
// target goes to the classes with the largest fractional part (ties to the
// lower label), which keeps label balance within one sample per split.
std::vector<std::size_t> allocate_per_class(const std::vector<std::size_t>& class_sizes,
                                            std::size_t divisor, std::size_t target) {
  std::vector<std::size_t> counts(class_sizes.size());
  std::size_t allocated = 0;
  for (std::size_t c = 0; c < class_sizes.size(); ++c) {
    counts[c] = class_sizes[c] / divisor;
    allocated += counts[c];
  }
  std::vector<std::size_t> order(class_sizes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return class_sizes[a] % divisor > class_sizes[b] % divisor;
  });
  for (std::size_t k = 0; allocated < target && k < order.size(); ++k) {
    ++counts[order[k]];
    ++allocated;
  }
  if (allocated != target) {
    throw TooFewSamples("cannot allocate split sizes across classes");
  }
  return counts;
}

}  // namespace

DatasetSplit split_dataset(std::vector<GraphSample> samples, std::uint64_t seed) {
  if (samples.size() < 10) {
    throw TooFewSamples("split requires at least 10 samples");
  }

  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    by_label[samples[i].label].push_back(i);
  }
  std::vector<std::size_t> class_sizes;
  class_sizes.reserve(by_label.size());
  for (const auto& [label, indices] : by_label) {
    class_sizes.push_back(indices.size());
  }

  const std::size_t n = samples.size();
  const std::vector<std::size_t> test_counts = allocate_per_class(class_sizes, 5, n / 5);
  const std::vector<std::size_t> val_counts = allocate_per_class(class_sizes, 10, n / 10);

  DatasetSplit split;
  Prng rng(derive_seed(seed, {0x51173ULL}));
  std::size_t c = 0;
  for (auto& [label, indices] : by_label) {
    shuffle(indices, rng);
    const std::size_t n_test = test_counts[c];
    const std::size_t n_val = val_counts[c];
    if (n_test + n_val > indices.size()) {
      throw TooFewSamples("class " + std::to_string(label) + " too small for a 7:2:1 split");
    }
    const std::size_t n_train = indices.size() - n_test - n_val;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      GraphSample& s = samples[indices[k]];
      if (k < n_train) {
        split.train.push_back(s);
      } else if (k < n_train + n_test) {
        split.test.push_back(s);
      } else {
        split.validation.push_back(s);
      }
    }
    ++c;
  }

  // Interleaving by label is an artifact of the per-label loop; shuffle each
  // split once more so batch order does not correlate with label.
  shuffle(split.train, rng);
  shuffle(split.test, rng);
  shuffle(split.validation, rng);
  return split;
}

void normalize_split(DatasetSplit& split) {
  const NormalizationStats stats = min_max_normalize(split.train);
  min_max_normalize(split.test, stats);
  min_max_normalize(split.validation, stats);
  split.normalization_stats = stats;
}

}  // namespace stfgacn::graph
