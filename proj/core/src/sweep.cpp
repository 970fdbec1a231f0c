#include "stfgacn/sweep.hpp"

#include <atomic>
#include <cstring>
#include <thread>

#include "stfgacn/rng.hpp"

namespace stfgacn::experiment {

namespace {

constexpr std::uint64_t kSplitTag = 0x5717;
constexpr std::uint64_t kTrainTag = 0x7417;

std::vector<Eigen::MatrixXd> restrict_signals(const std::vector<GraphSample>& samples,
                                              const std::vector<int>& lanes) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(samples.size());
  for (const GraphSample& s : samples) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(lanes.size()), s.signals.cols());
    for (std::size_t i = 0; i < lanes.size(); ++i) {
      m.row(static_cast<Eigen::Index>(i)) = s.signals.row(lanes[i]);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<int> labels_of(const std::vector<GraphSample>& samples) {
  std::vector<int> labels;
  labels.reserve(samples.size());
  for (const GraphSample& s : samples) labels.push_back(s.label);
  return labels;
}

std::unique_ptr<Classifier> train_neural(nn::Variant variant, const graph::DatasetSplit& split,
                                         const graph::RadarGraph& graph,
                                         const TrainConfig& config, int hidden, int single_radar,
                                         TrainResult* result_out) {
  const VariantSetup setup = make_variant_setup(
      variant, graph, static_cast<int>(split.train.front().signals.cols()), hidden, single_radar);
  auto model = std::make_shared<const nn::Model>(setup.model_config);
  const std::vector<Eigen::MatrixXd> train_signals = restrict_signals(split.train, setup.lanes);
  const std::vector<Eigen::MatrixXd> val_signals = restrict_signals(split.validation, setup.lanes);
  TrainResult result = train(*model, train_signals, labels_of(split.train), val_signals,
                             labels_of(split.validation), setup.ahat, config);
  if (result_out != nullptr) {
    *result_out = result;
  }
  return std::make_unique<NeuralClassifier>(model, std::move(result.best_params), setup.lanes,
                                            setup.ahat);
}

}  // namespace

VariantSetup make_variant_setup(nn::Variant variant, const graph::RadarGraph& graph, int seq_len,
                                int hidden, int single_radar) {
  VariantSetup setup;
  setup.model_config.variant = variant;
  setup.model_config.seq_len = seq_len;
  setup.model_config.hidden = hidden;

  switch (variant) {
    case nn::Variant::kGru:
    case nn::Variant::kAttGru:
      setup.lanes = {single_radar};
      setup.model_config.n_lanes = 1;
      break;
    case nn::Variant::kStgcnLike:
    case nn::Variant::kStfgacn2F: {
      const int n = static_cast<int>(graph.adjacency.rows());
      setup.lanes.resize(n);
      for (int i = 0; i < n; ++i) setup.lanes[i] = i;
      setup.model_config.n_lanes = n;
      setup.model_config.subnets = graph.subnets;
      setup.ahat = graph.normalized_adjacency;
      break;
    }
    case nn::Variant::kStfgacn1F: {
      if (graph.subnets.empty()) {
        throw ConfigError("single-subnet variant requires subnet information");
      }
      setup.lanes = graph.subnets.front();
      setup.model_config.n_lanes = static_cast<int>(setup.lanes.size());
      std::vector<int> local(setup.lanes.size());
      for (std::size_t i = 0; i < local.size(); ++i) local[i] = static_cast<int>(i);
      setup.model_config.subnets = {local};
      setup.ahat = graph::restricted_normalized_adjacency(graph.adjacency, setup.lanes);
      break;
    }
    default:
      throw ConfigError(std::string("variant ") + nn::variant_name(variant) +
                        " has no neural setup");
  }
  return setup;
}

std::unique_ptr<Classifier> train_variant(nn::Variant variant, const graph::DatasetSplit& split,
                                          const graph::RadarGraph& graph,
                                          const TrainConfig& config, int hidden,
                                          TrainResult* result_out) {
  if (split.train.empty()) {
    throw TooFewSamples("training requires a nonempty train split");
  }
  const int n_radars = static_cast<int>(split.train.front().signals.rows());

  switch (variant) {
    case nn::Variant::kGru:
    case nn::Variant::kAttGru:
    case nn::Variant::kStgcnLike:
    case nn::Variant::kStfgacn1F:
    case nn::Variant::kStfgacn2F:
      return train_neural(variant, split, graph, config, hidden, 0, result_out);
    case nn::Variant::kFft:
      return std::make_unique<FftBaselineClassifier>(fit_fft_templates(split.train, 0), 0);
    case nn::Variant::kFft9: {
      std::vector<std::unique_ptr<Classifier>> members;
      for (int r = 0; r < n_radars; ++r) {
        members.push_back(
            std::make_unique<FftBaselineClassifier>(fit_fft_templates(split.train, r), r));
      }
      return std::make_unique<VotingClassifier>(std::move(members));
    }
    case nn::Variant::kGru9: {
      std::vector<std::unique_ptr<Classifier>> members;
      for (int r = 0; r < n_radars; ++r) {
        TrainConfig member_config = config;
        member_config.seed = derive_seed(config.seed, {kTrainTag, static_cast<std::uint64_t>(r)});
        members.push_back(train_neural(nn::Variant::kGru, split, graph, member_config, hidden, r,
                                       result_out));
      }
      return std::make_unique<VotingClassifier>(std::move(members));
    }
  }
  throw ConfigError("unknown variant");
}

PreparedData prepare_data(const Scenario& scenario, int count_per_class,
                          std::optional<double> snr_db, std::uint64_t seed) {
  PreparedData data;
  std::vector<GraphSample> samples = scenario.simulator.generate_dataset(
      scenario.radars, scenario.profiles, count_per_class, snr_db, seed);
  data.split = graph::split_dataset(std::move(samples), derive_seed(seed, {kSplitTag}));
  graph::normalize_split(data.split);
  data.graph = graph::build_adjacency(scenario.radars);
  return data;
}

std::vector<SweepRow> run_snr_sweep(const Scenario& scenario, const SweepRequest& request) {
  struct Cell {
    std::size_t snr_index;
    std::size_t seed_index;
  };
  std::vector<Cell> cells;
  for (std::size_t si = 0; si < request.snr_list_db.size(); ++si) {
    for (std::size_t di = 0; di < request.seeds.size(); ++di) {
      cells.push_back({si, di});
    }
  }

  const std::size_t v_count = request.variants.size();
  std::vector<SweepRow> rows(v_count * cells.size());
  auto row_index = [&](std::size_t variant_index, std::size_t cell_index) {
    // (variant, snr, seed) grid order.
    const Cell& c = cells[cell_index];
    return variant_index * cells.size() + c.snr_index * request.seeds.size() + c.seed_index;
  };

  auto run_cell = [&](std::size_t cell_index) {
    const Cell& cell = cells[cell_index];
    const double snr = request.snr_list_db[cell.snr_index];
    const std::uint64_t seed = request.seeds[cell.seed_index];

    PreparedData data;
    bool data_ok = true;
    std::string data_error;
    try {
      data = prepare_data(scenario, request.scale.count_per_class, snr, seed);
    } catch (const std::exception& e) {
      data_ok = false;
      data_error = e.what();
    }

    for (std::size_t vi = 0; vi < v_count; ++vi) {
      SweepRow& row = rows[row_index(vi, cell_index)];
      row.variant = request.variants[vi];
      row.snr_db = snr;
      row.seed = seed;
      if (!data_ok) {
        row.failed = true;
        row.error = data_error;
        continue;
      }
      try {
        TrainConfig config = request.base_train;
        config.max_epochs = request.scale.max_epochs;
        config.seed = derive_seed(seed, {kTrainTag, static_cast<std::uint64_t>(vi),
                                         static_cast<std::uint64_t>(row.variant)});
        const auto classifier =
            train_variant(row.variant, data.split, data.graph, config, request.scale.hidden);
        row.metrics = evaluate(*classifier, data.split.test);
      } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
      }
    }
  };

  const int jobs = std::max(1, request.jobs);
  if (jobs == 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int worker_count = std::min<std::size_t>(jobs, cells.size());
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
          run_cell(i);
        }
      });
    }
    for (std::thread& t : workers) t.join();
  }
  return rows;
}

std::vector<AblationRow> run_ablation(const Scenario& scenario,
                                      const std::vector<nn::Variant>& variants, double snr_db,
                                      std::uint64_t seed, const ExperimentScale& scale,
                                      const TrainConfig& base_train) {
  const PreparedData data = prepare_data(scenario, scale.count_per_class, snr_db, seed);
  std::vector<AblationRow> rows;
  rows.reserve(variants.size());
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    AblationRow row;
    row.variant = variants[vi];
    try {
      TrainConfig config = base_train;
      config.max_epochs = scale.max_epochs;
      config.seed = derive_seed(seed, {kTrainTag, static_cast<std::uint64_t>(vi),
                                       static_cast<std::uint64_t>(row.variant)});
      const auto classifier =
          train_variant(row.variant, data.split, data.graph, config, scale.hidden);
      row.metrics = evaluate(*classifier, data.split.test);
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace stfgacn::experiment
