#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stfgacn/graph_dataset.hpp"
#include "stfgacn/scenario.hpp"

namespace stfgacn::io {

inline constexpr int kDatasetFormatVersion = 1;

/// Everything needed to reproduce and reload a dataset directory:
///   manifest.json  - scenario, seeds, counts, format version
///   segments.csv   - header segment_id,radar_id,class_label,snr_db,s0..s199;
///                    one row per (sample, radar); values in dBsm with 9
///                    significant digits; segment_id is the graph-sample id
///   graph.csv      - dense N x N adjacency
struct DatasetBundle {
  Scenario scenario;
  std::vector<GraphSample> samples;
  std::uint64_t master_seed = 0;
  std::optional<double> snr_db;
  int count_per_class = 0;
};

void write_dataset(const std::filesystem::path& dir, const DatasetBundle& bundle);
DatasetBundle read_dataset(const std::filesystem::path& dir);

struct SplitManifest {
  std::vector<long> train_ids;
  std::vector<long> test_ids;
  std::vector<long> validation_ids;
  graph::NormalizationStats normalization;
  std::uint64_t split_seed = 0;
};

void write_split_manifest(const std::filesystem::path& file, const graph::DatasetSplit& split,
                          std::uint64_t split_seed);
SplitManifest read_split_manifest(const std::filesystem::path& file);

/// Reassembles a normalized split from a dataset and its split manifest.
graph::DatasetSplit apply_split_manifest(const std::vector<GraphSample>& samples,
                                         const SplitManifest& manifest);

/// Shortest-g formatting used across CSV writers.
std::string format_sig(double value, int significant_digits);

/// Scenario serialization shared by the dataset manifest and config files.
std::string scenario_to_json_text(const Scenario& scenario, int indent = 2);
Scenario scenario_from_json_text(const std::string& text);

}  // namespace stfgacn::io
