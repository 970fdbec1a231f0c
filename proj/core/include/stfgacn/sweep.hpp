#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stfgacn/classifier.hpp"
#include "stfgacn/graph_dataset.hpp"
#include "stfgacn/scenario.hpp"
#include "stfgacn/train.hpp"

namespace stfgacn::experiment {

/// Lane subset, model configuration, and restricted graph for one variant.
struct VariantSetup {
  nn::ModelConfig model_config;
  std::vector<int> lanes;
  Eigen::MatrixXd ahat;  // empty for variants that ignore the graph
};

/// Maps a variant onto the radar network: STFGACN-2F and the temporal-conv
/// ablation see the whole graph, STFGACN-1F the first subnet only, and the
/// single-radar variants one radar row.
VariantSetup make_variant_setup(nn::Variant variant, const graph::RadarGraph& graph,
                                int seq_len, int hidden, int single_radar = 0);

/// Trains one variant (neural, spectral-template, or voting ensemble) on the
/// split. For neural variants the training log is written to result_out when
/// non-null; ensembles report the log of their last member.
std::unique_ptr<Classifier> train_variant(nn::Variant variant, const graph::DatasetSplit& split,
                                          const graph::RadarGraph& graph,
                                          const TrainConfig& config, int hidden,
                                          TrainResult* result_out = nullptr);

struct SweepRequest {
  std::vector<nn::Variant> variants;
  std::vector<double> snr_list_db;
  std::vector<std::uint64_t> seeds;
  ExperimentScale scale;
  TrainConfig base_train;  // seed is derived per cell
  int jobs = 1;
};

struct SweepRow {
  nn::Variant variant = nn::Variant::kGru;
  double snr_db = 0.0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  bool failed = false;
  std::string error;
};

/// For each (snr, seed): generate one dataset, split, normalize; then train
/// and evaluate every requested variant on it. Rows come back in
/// (variant, snr, seed) grid order regardless of the job count. A failed
/// cell carries its error and does not stop the sweep.
std::vector<SweepRow> run_snr_sweep(const Scenario& scenario, const SweepRequest& request);

struct AblationRow {
  nn::Variant variant = nn::Variant::kGru;
  MetricsReport metrics;
  bool failed = false;
  std::string error;
};

/// Trains every variant on one shared dataset at a fixed SNR.
std::vector<AblationRow> run_ablation(const Scenario& scenario,
                                      const std::vector<nn::Variant>& variants, double snr_db,
                                      std::uint64_t seed, const ExperimentScale& scale,
                                      const TrainConfig& base_train);

/// Dataset + split + graph for one (snr, seed) cell; shared by sweep and
/// ablation and reused by callers that need the same preparation.
struct PreparedData {
  graph::DatasetSplit split;
  graph::RadarGraph graph;
};
PreparedData prepare_data(const Scenario& scenario, int count_per_class,
                          std::optional<double> snr_db, std::uint64_t seed);

}  // namespace stfgacn::experiment
