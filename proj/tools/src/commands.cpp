#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "run_config.hpp"
#include "stfgacn/checkpoint.hpp"
#include "stfgacn/classifier.hpp"
#include "stfgacn/dataset_io.hpp"
#include "stfgacn/rng.hpp"
#include "stfgacn/svg_plot.hpp"
#include "stfgacn/sweep.hpp"

namespace stfgacn::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kRunManifestVersion = 1;
constexpr const char* kCliVersion = "0.1.0";

std::uint64_t effective_seed(const CommonArgs& args, const AppConfig& cfg) {
  if (args.seed) return *args.seed;
  if (cfg.seed) return *cfg.seed;
  return 0;
}

std::string effective_scale(const CommonArgs& args, const AppConfig& cfg,
                            const std::string& fallback) {
  const std::string scale = args.scale ? *args.scale : cfg.scale.value_or(fallback);
  if (scale != "desk" && scale != "paper") {
    throw ConfigError("scale must be 'desk' or 'paper', got '" + scale + "'");
  }
  return scale;
}

int effective_jobs(const CommonArgs& args, const AppConfig& cfg) {
  const int jobs = args.jobs ? *args.jobs : cfg.jobs.value_or(1);
  if (jobs < 1) {
    throw ConfigError("--jobs must be >= 1");
  }
  return jobs;
}

void prepare_out_dir(const fs::path& out, bool force) {
  if (fs::exists(out)) {
    if (!fs::is_directory(out)) {
      throw ConfigError(out.string() + " exists and is not a directory");
    }
    if (!fs::is_empty(out) && !force) {
      throw ConfigError(out.string() + " is not empty; pass --force to overwrite");
    }
  } else {
    fs::create_directories(out);
  }
}

void write_text(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + file.string() + " for writing");
  }
  out << content;
}

void write_run_manifest(const fs::path& dir, const std::string& command, const json& effective) {
  json manifest;
  manifest["format_version"] = kRunManifestVersion;
  manifest["cli_version"] = kCliVersion;
  manifest["command"] = command;
  manifest["effective_config"] = effective;
  write_text(dir / "run_manifest.json", manifest.dump(2) + "\n");
}

std::string snr_to_string(const std::optional<double>& snr) {
  return snr ? io::format_sig(*snr, 9) : std::string("clean");
}

std::vector<nn::Variant> parse_variants(const std::vector<std::string>& names) {
  std::vector<nn::Variant> variants;
  variants.reserve(names.size());
  for (const std::string& name : names) {
    const auto v = nn::parse_variant(name);
    if (!v) {
      throw ConfigError("unknown variant '" + name + "'");
    }
    variants.push_back(*v);
  }
  return variants;
}

const std::vector<std::string> kDefaultVariantNames = {"GRU", "ATT-GRU", "STGCN-like",
                                                       "STFGACN-1F", "STFGACN-2F"};

std::string metrics_value(double v) { return io::format_sig(v, 9); }

ExperimentScale scale_by_name(const std::string& name) {
  return name == "paper" ? ExperimentScale::paper() : ExperimentScale::desk();
}

experiment::TrainConfig make_train_config(const AppConfig& cfg, const ExperimentScale& scale,
                                          std::uint64_t seed) {
  experiment::TrainConfig tc;
  tc.batch_size = cfg.batch_size.value_or(5);
  tc.initial_lr = cfg.initial_lr.value_or(1e-3);
  tc.step_decay = cfg.step_decay.value_or(0.5);
  tc.decay_period_epochs = cfg.decay_period_epochs.value_or(30);
  tc.max_epochs = cfg.max_epochs.value_or(scale.max_epochs);
  tc.patience = cfg.patience.value_or(10);
  tc.seed = seed;
  return tc;
}

json train_config_to_json(const experiment::TrainConfig& tc, int hidden) {
  return json{{"batch_size", tc.batch_size},
              {"initial_lr", tc.initial_lr},
              {"step_decay", tc.step_decay},
              {"decay_period_epochs", tc.decay_period_epochs},
              {"max_epochs", tc.max_epochs},
              {"patience", tc.patience},
              {"hidden", hidden}};
}

void write_training_log(const fs::path& file, const std::vector<experiment::EpochLog>& log) {
  std::ostringstream csv;
  csv << "epoch,train_loss,val_loss,val_acc,lr\n";
  for (const auto& e : log) {
    csv << e.epoch << "," << metrics_value(e.train_loss) << "," << metrics_value(e.val_loss)
        << "," << metrics_value(e.val_acc) << "," << metrics_value(e.lr) << "\n";
  }
  write_text(file, csv.str());
}

void append_metrics_row(std::ostringstream& csv, const experiment::MetricsReport& m) {
  csv << metrics_value(m.accuracy) << "," << metrics_value(m.precision) << ","
      << metrics_value(m.recall) << "," << metrics_value(m.f1);
}

}  // namespace

int cmd_simulate(const SimulateArgs& args) {
  const AppConfig cfg = load_config(args.common.config_path);
  const std::uint64_t seed = effective_seed(args.common, cfg);
  const std::string scale_name = effective_scale(args.common, cfg, "desk");
  const ExperimentScale scale = scale_by_name(scale_name);
  if (args.common.out.empty()) {
    throw ConfigError("simulate requires --out");
  }

  io::DatasetBundle bundle;
  bundle.scenario = cfg.scenario.value_or(standard_scenario());
  bundle.master_seed = seed;
  bundle.count_per_class =
      args.count_per_class ? *args.count_per_class : cfg.count_per_class.value_or(scale.count_per_class);
  if (bundle.count_per_class < 1) {
    throw ConfigError("count_per_class must be >= 1");
  }
  if (args.snr_text) {
    bundle.snr_db = parse_snr(*args.snr_text);
  } else if (cfg.snr_present) {
    bundle.snr_db = cfg.snr_db;
  }  // default: clean

  prepare_out_dir(args.common.out, args.common.force);
  bundle.samples = bundle.scenario.simulator.generate_dataset(
      bundle.scenario.radars, bundle.scenario.profiles, bundle.count_per_class, bundle.snr_db,
      seed);
  io::write_dataset(args.common.out, bundle);

  json effective;
  effective["seed"] = seed;
  effective["scale"] = scale_name;
  effective["count_per_class"] = bundle.count_per_class;
  effective["snr_db"] = bundle.snr_db ? json(*bundle.snr_db) : json("clean");
  effective["scenario"] = json::parse(io::scenario_to_json_text(bundle.scenario));
  write_run_manifest(args.common.out, "simulate", effective);

  std::map<int, int> subnet_sizes;
  for (const auto& r : bundle.scenario.radars) subnet_sizes[r.subnet_id]++;
  std::ostringstream subnets;
  bool first = true;
  for (const auto& [id, n] : subnet_sizes) {
    if (!first) subnets << "+";
    subnets << n;
    first = false;
  }
  std::cout << "wrote " << bundle.samples.size() << " graph samples ("
            << bundle.count_per_class << " per class), " << bundle.scenario.radars.size()
            << " radars (subnets " << subnets.str() << "), "
            << bundle.samples.size() * bundle.scenario.radars.size() << " segments, snr="
            << snr_to_string(bundle.snr_db) << ", seed=" << seed << " -> " << args.common.out
            << "\n";
  return 0;
}

int cmd_train(const TrainArgs& args) {
  const AppConfig cfg = load_config(args.common.config_path);
  const std::uint64_t seed = effective_seed(args.common, cfg);
  const std::string scale_name = effective_scale(args.common, cfg, "paper");
  const ExperimentScale scale = scale_by_name(scale_name);
  if (args.common.out.empty()) {
    throw ConfigError("train requires --out");
  }
  if (args.data_dir.empty() || !fs::exists(fs::path(args.data_dir) / "manifest.json")) {
    throw ConfigError("dataset not found at '" + args.data_dir + "'");
  }

  const std::string variant_name = args.variant ? *args.variant : cfg.variant.value_or("STFGACN-2F");
  const auto variant = nn::parse_variant(variant_name);
  if (!variant) {
    throw ConfigError("unknown variant '" + variant_name + "'");
  }
  if (!nn::variant_is_neural(*variant)) {
    throw ConfigError(std::string("variant ") + nn::variant_name(*variant) +
                      " has no trainable parameters; use sweep or ablate");
  }

  const io::DatasetBundle bundle = io::read_dataset(args.data_dir);
  const std::uint64_t split_seed = args.split_seed ? *args.split_seed
                                   : cfg.split_seed ? *cfg.split_seed
                                                    : derive_seed(seed, {0x5717ULL});
  graph::DatasetSplit split = graph::split_dataset(bundle.samples, split_seed);
  graph::normalize_split(split);
  const graph::RadarGraph graph = graph::build_adjacency(bundle.scenario.radars);

  const int hidden = args.hidden ? *args.hidden : cfg.hidden.value_or(scale.hidden);
  experiment::TrainConfig tc = make_train_config(cfg, scale, derive_seed(seed, {0x7417ULL}));
  if (args.epochs) tc.max_epochs = *args.epochs;
  if (args.batch_size) tc.batch_size = *args.batch_size;
  if (args.learning_rate) tc.initial_lr = *args.learning_rate;
  const int radar_index = args.radar_index ? *args.radar_index : cfg.radar_index.value_or(0);

  prepare_out_dir(args.common.out, args.common.force);
  const fs::path out(args.common.out);

  const int seq_len = static_cast<int>(bundle.samples.front().signals.cols());
  const experiment::VariantSetup setup =
      experiment::make_variant_setup(*variant, graph, seq_len, hidden, radar_index);
  nn::Model model(setup.model_config);

  Eigen::VectorXd best_params;
  std::vector<experiment::EpochLog> log;
  if (args.init_zero || tc.max_epochs == 0) {
    best_params = args.init_zero ? Eigen::VectorXd::Zero(model.store().size())
                                 : model.store().make_initial(derive_seed(tc.seed, {0x1217ULL}));
  }
  if (!args.init_zero && tc.max_epochs > 0) {
    auto restrict = [&](const std::vector<GraphSample>& samples) {
      std::vector<Eigen::MatrixXd> out_signals;
      out_signals.reserve(samples.size());
      for (const GraphSample& s : samples) {
        Eigen::MatrixXd m(static_cast<Eigen::Index>(setup.lanes.size()), s.signals.cols());
        for (std::size_t i = 0; i < setup.lanes.size(); ++i) {
          m.row(static_cast<Eigen::Index>(i)) = s.signals.row(setup.lanes[i]);
        }
        out_signals.push_back(std::move(m));
      }
      return out_signals;
    };
    auto labels = [](const std::vector<GraphSample>& samples) {
      std::vector<int> out_labels;
      out_labels.reserve(samples.size());
      for (const GraphSample& s : samples) out_labels.push_back(s.label);
      return out_labels;
    };
    const experiment::TrainResult result =
        experiment::train(model, restrict(split.train), labels(split.train),
                          restrict(split.validation), labels(split.validation), setup.ahat, tc);
    best_params = result.best_params;
    log = result.log;
  }

  std::map<std::string, double> hyper;
  hyper["hidden"] = hidden;
  hyper["initial_lr"] = tc.initial_lr;
  hyper["batch_size"] = tc.batch_size;
  hyper["step_decay"] = tc.step_decay;
  hyper["decay_period_epochs"] = tc.decay_period_epochs;
  hyper["max_epochs"] = tc.max_epochs;
  hyper["patience"] = tc.patience;
  hyper["split_seed"] = static_cast<double>(split_seed);
  hyper["radar_index"] = radar_index;
  io::write_checkpoint(out / "checkpoint.stfg", model, best_params, setup.lanes, seed, hyper);
  write_training_log(out / "training_log.csv", log);
  io::write_split_manifest(out / "split_manifest.json", split, split_seed);

  json effective;
  effective["seed"] = seed;
  effective["scale"] = scale_name;
  effective["data"] = args.data_dir;
  effective["variant"] = nn::variant_name(*variant);
  effective["split_seed"] = split_seed;
  effective["init_zero"] = args.init_zero;
  effective["train"] = train_config_to_json(tc, hidden);
  effective["radar_index"] = radar_index;
  write_run_manifest(out, "train", effective);

  if (!log.empty()) {
    const auto& last = log.back();
    std::cout << "trained " << nn::variant_name(*variant) << " for " << log.size()
              << " epochs (best val loss " << metrics_value(last.val_loss) << ", val acc "
              << metrics_value(last.val_acc) << ") -> " << (out / "checkpoint.stfg").string()
              << "\n";
  } else {
    std::cout << "wrote untrained checkpoint for " << nn::variant_name(*variant) << " -> "
              << (out / "checkpoint.stfg").string() << "\n";
  }
  return 0;
}

int cmd_eval(const EvalArgs& args) {
  const AppConfig cfg = load_config(args.common.config_path);
  if (args.checkpoint.empty() || !fs::exists(args.checkpoint)) {
    throw ConfigError("checkpoint not found at '" + args.checkpoint + "'");
  }
  if (args.data_dir.empty() || !fs::exists(fs::path(args.data_dir) / "manifest.json")) {
    throw ConfigError("dataset not found at '" + args.data_dir + "'");
  }
  if (args.common.out.empty()) {
    throw ConfigError("eval requires --out");
  }
  (void)cfg;

  const io::Checkpoint ckpt = io::read_checkpoint(args.checkpoint);
  const io::DatasetBundle bundle = io::read_dataset(args.data_dir);

  const int dataset_k = static_cast<int>(bundle.samples.front().signals.cols());
  const int dataset_n = static_cast<int>(bundle.scenario.radars.size());
  if (ckpt.model_config.seq_len != dataset_k) {
    throw ShapeMismatch("checkpoint expects sequences of length " +
                        std::to_string(ckpt.model_config.seq_len) + ", dataset provides " +
                        std::to_string(dataset_k));
  }
  for (int lane : ckpt.lanes) {
    if (lane >= dataset_n) {
      throw ShapeMismatch("checkpoint lane " + std::to_string(lane) +
                          " out of range for dataset with " + std::to_string(dataset_n) +
                          " radars");
    }
  }

  // Split assembly: a split manifest pins membership and normalization; the
  // "full" pseudo-split falls back to stats fitted over the whole dataset.
  const fs::path manifest_path = args.split_manifest
                                     ? fs::path(*args.split_manifest)
                                     : fs::path(args.checkpoint).parent_path() / "split_manifest.json";
  std::vector<std::pair<std::string, std::vector<GraphSample>>> requested;
  if (args.split == "full") {
    std::vector<GraphSample> all = bundle.samples;
    if (fs::exists(manifest_path)) {
      const io::SplitManifest manifest = io::read_split_manifest(manifest_path);
      graph::min_max_normalize(all, manifest.normalization);
    } else {
      graph::min_max_normalize(all);
    }
    requested.emplace_back("full", std::move(all));
  } else {
    if (!fs::exists(manifest_path)) {
      throw ConfigError("split manifest not found at '" + manifest_path.string() +
                        "' (needed for --split " + args.split + ")");
    }
    const io::SplitManifest manifest = io::read_split_manifest(manifest_path);
    graph::DatasetSplit split = io::apply_split_manifest(bundle.samples, manifest);
    if (args.split == "train" || args.split == "all") {
      requested.emplace_back("train", split.train);
    }
    if (args.split == "test" || args.split == "all") {
      requested.emplace_back("test", split.test);
    }
    if (args.split == "validation" || args.split == "all") {
      requested.emplace_back("validation", split.validation);
    }
    if (requested.empty()) {
      throw ConfigError("unknown split '" + args.split +
                        "' (expected train|test|validation|all|full)");
    }
  }

  auto model = std::make_shared<const nn::Model>(ckpt.model_config);
  const graph::RadarGraph graph = graph::build_adjacency(bundle.scenario.radars);
  Eigen::MatrixXd ahat;
  if (nn::variant_uses_graph(ckpt.model_config.variant)) {
    ahat = graph::restricted_normalized_adjacency(graph.adjacency, ckpt.lanes);
  }
  const experiment::NeuralClassifier classifier(model, ckpt.params, ckpt.lanes, ahat);

  prepare_out_dir(args.common.out, args.common.force);
  std::ostringstream csv;
  csv << "split,tp,tn,fp,fn,accuracy,precision,recall,f1\n";
  for (const auto& [name, samples] : requested) {
    const experiment::MetricsReport m = experiment::evaluate(classifier, samples);
    csv << name << "," << m.tp << "," << m.tn << "," << m.fp << "," << m.fn << ",";
    append_metrics_row(csv, m);
    csv << "\n";
    std::cout << name << ": accuracy=" << metrics_value(m.accuracy)
              << " precision=" << metrics_value(m.precision)
              << " recall=" << metrics_value(m.recall) << " f1=" << metrics_value(m.f1) << " (n="
              << m.total() << ")\n";
  }
  write_text(fs::path(args.common.out) / "metrics.csv", csv.str());

  json effective;
  effective["checkpoint"] = args.checkpoint;
  effective["data"] = args.data_dir;
  effective["split"] = args.split;
  effective["variant"] = nn::variant_name(ckpt.model_config.variant);
  write_run_manifest(args.common.out, "eval", effective);
  return 0;
}

namespace {

struct SweepOutcome {
  std::vector<experiment::SweepRow> rows;
  int failed = 0;
};

void write_sweep_csv(const fs::path& file, const std::vector<experiment::SweepRow>& rows) {
  std::ostringstream csv;
  csv << "variant,snr_db,seed,accuracy,precision,recall,f1\n";
  for (const auto& row : rows) {
    csv << nn::variant_name(row.variant) << "," << io::format_sig(row.snr_db, 9) << ","
        << row.seed << ",";
    append_metrics_row(csv, row.metrics);
    csv << "\n";
  }
  write_text(file, csv.str());
}

void write_sweep_plot(const fs::path& file, const std::vector<experiment::SweepRow>& rows) {
  // Mean accuracy per (variant, snr) over seeds, skipping failed cells.
  std::map<std::string, std::map<double, std::pair<double, int>>> acc;
  for (const auto& row : rows) {
    if (row.failed) continue;
    auto& cell = acc[nn::variant_name(row.variant)][row.snr_db];
    cell.first += row.metrics.accuracy;
    cell.second += 1;
  }
  io::PlotSpec spec;
  spec.title = "Accuracy vs SNR";
  spec.x_label = "SNR (dB)";
  spec.y_label = "accuracy";
  for (const auto& [name, by_snr] : acc) {
    io::PlotSeries series;
    series.name = name;
    for (const auto& [snr, cell] : by_snr) {
      series.points.emplace_back(snr, cell.first / cell.second);
    }
    spec.series.push_back(std::move(series));
  }
  io::write_line_plot(file, spec);
}

}  // namespace

int cmd_sweep(const SweepArgs& args) {
  const AppConfig cfg = load_config(args.common.config_path);
  const std::uint64_t seed = effective_seed(args.common, cfg);
  const std::string scale_name = effective_scale(args.common, cfg, "desk");
  if (args.common.out.empty()) {
    throw ConfigError("sweep requires --out");
  }

  experiment::SweepRequest request;
  request.variants = parse_variants(args.variants ? *args.variants
                                                  : cfg.sweep_variants.value_or(kDefaultVariantNames));
  request.snr_list_db = args.snr_list_db
                            ? *args.snr_list_db
                            : cfg.snr_list_db.value_or(std::vector<double>{-10, -5, 0, 5, 10});
  if (args.seeds) {
    request.seeds = *args.seeds;
  } else if (cfg.seeds) {
    request.seeds = *cfg.seeds;
  } else {
    request.seeds = {seed, seed + 1, seed + 2};
  }
  request.scale = scale_by_name(scale_name);
  request.base_train = make_train_config(cfg, request.scale, 0);
  if (cfg.hidden) request.scale.hidden = *cfg.hidden;
  if (cfg.count_per_class) request.scale.count_per_class = *cfg.count_per_class;
  if (cfg.max_epochs) request.scale.max_epochs = *cfg.max_epochs;
  request.jobs = effective_jobs(args.common, cfg);

  const Scenario scenario = cfg.scenario.value_or(standard_scenario());

  prepare_out_dir(args.common.out, args.common.force);
  const std::vector<experiment::SweepRow> rows = experiment::run_snr_sweep(scenario, request);

  const fs::path out(args.common.out);
  write_sweep_csv(out / "results.csv", rows);
  write_sweep_plot(out / "accuracy_vs_snr.svg", rows);

  json effective;
  effective["seed"] = seed;
  effective["scale"] = scale_name;
  effective["jobs"] = request.jobs;
  effective["snr_list_db"] = request.snr_list_db;
  effective["seeds"] = request.seeds;
  json names = json::array();
  for (auto v : request.variants) names.push_back(nn::variant_name(v));
  effective["variants"] = names;
  effective["count_per_class"] = request.scale.count_per_class;
  effective["hidden"] = request.scale.hidden;
  effective["train"] = train_config_to_json(request.base_train, request.scale.hidden);
  effective["scenario"] = json::parse(io::scenario_to_json_text(scenario));
  write_run_manifest(out, "sweep", effective);

  int failed = 0;
  for (const auto& row : rows) {
    if (row.failed) {
      ++failed;
      std::cerr << "cell failed: " << nn::variant_name(row.variant) << " snr=" << row.snr_db
                << " seed=" << row.seed << ": " << row.error << "\n";
    }
  }
  std::cout << "sweep finished: " << rows.size() - failed << "/" << rows.size()
            << " cells ok -> " << (out / "results.csv").string() << "\n";
  return failed == 0 ? 0 : 2;
}

int cmd_ablate(const AblateArgs& args) {
  const AppConfig cfg = load_config(args.common.config_path);
  const std::uint64_t seed = effective_seed(args.common, cfg);
  const std::string scale_name = effective_scale(args.common, cfg, "desk");
  if (args.common.out.empty()) {
    throw ConfigError("ablate requires --out");
  }

  const std::vector<nn::Variant> variants = parse_variants(
      args.variants ? *args.variants : cfg.ablate_variants.value_or(kDefaultVariantNames));
  const double snr = args.snr_db ? *args.snr_db : cfg.ablate_snr_db.value_or(-10.0);
  ExperimentScale scale = scale_by_name(scale_name);
  if (cfg.hidden) scale.hidden = *cfg.hidden;
  if (cfg.count_per_class) scale.count_per_class = *cfg.count_per_class;
  if (cfg.max_epochs) scale.max_epochs = *cfg.max_epochs;
  const experiment::TrainConfig tc = make_train_config(cfg, scale, 0);
  const Scenario scenario = cfg.scenario.value_or(standard_scenario());

  prepare_out_dir(args.common.out, args.common.force);
  const std::vector<experiment::AblationRow> rows =
      experiment::run_ablation(scenario, variants, snr, seed, scale, tc);

  const fs::path out(args.common.out);
  std::ostringstream csv;
  csv << "variant,accuracy,precision,recall,f1\n";
  for (const auto& row : rows) {
    csv << nn::variant_name(row.variant) << ",";
    append_metrics_row(csv, row.metrics);
    csv << "\n";
  }
  write_text(out / "ablation.csv", csv.str());

  io::PlotSpec spec;
  spec.title = "Ablation at " + io::format_sig(snr, 4) + " dB";
  spec.x_label = "SNR (dB)";
  spec.y_label = "accuracy";
  for (const auto& row : rows) {
    if (row.failed) continue;
    spec.series.push_back({nn::variant_name(row.variant), {{snr, row.metrics.accuracy}}});
  }
  io::write_line_plot(out / "ablation.svg", spec);

  json effective;
  effective["seed"] = seed;
  effective["scale"] = scale_name;
  effective["snr_db"] = snr;
  json names = json::array();
  for (auto v : variants) names.push_back(nn::variant_name(v));
  effective["variants"] = names;
  effective["count_per_class"] = scale.count_per_class;
  effective["hidden"] = scale.hidden;
  effective["train"] = train_config_to_json(tc, scale.hidden);
  effective["scenario"] = json::parse(io::scenario_to_json_text(scenario));
  write_run_manifest(out, "ablate", effective);

  int failed = 0;
  for (const auto& row : rows) {
    if (row.failed) {
      ++failed;
      std::cerr << "variant failed: " << nn::variant_name(row.variant) << ": " << row.error
                << "\n";
    } else {
      std::cout << nn::variant_name(row.variant)
                << ": accuracy=" << metrics_value(row.metrics.accuracy) << "\n";
    }
  }
  return failed == 0 ? 0 : 2;
}

int cmd_plot(const PlotArgs& args) {
  if (args.results_csv.empty() || !fs::exists(args.results_csv)) {
    throw ConfigError("results csv not found at '" + args.results_csv + "'");
  }
  if (args.common.out.empty()) {
    throw ConfigError("plot requires --out (an .svg path)");
  }
  std::ifstream in(args.results_csv);
  std::string header;
  if (!std::getline(in, header)) {
    throw IoError("empty results csv");
  }

  std::vector<experiment::SweepRow> rows;
  std::string line;
  if (header.rfind("variant,snr_db,seed,", 0) == 0) {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string name, snr, seed, acc;
      std::getline(fields, name, ',');
      std::getline(fields, snr, ',');
      std::getline(fields, seed, ',');
      std::getline(fields, acc, ',');
      experiment::SweepRow row;
      const auto v = nn::parse_variant(name);
      if (!v) {
        throw IoError("unknown variant in csv: " + name);
      }
      row.variant = *v;
      row.snr_db = std::stod(snr);
      row.seed = std::stoull(seed);
      row.metrics.accuracy = std::stod(acc);
      row.failed = !std::isfinite(row.metrics.accuracy);
      rows.push_back(row);
    }
    if (fs::path(args.common.out).has_parent_path()) {
      fs::create_directories(fs::path(args.common.out).parent_path());
    }
    write_sweep_plot(args.common.out, rows);
  } else if (header.rfind("variant,accuracy,", 0) == 0) {
    io::PlotSpec spec;
    spec.title = "Accuracy per variant";
    spec.x_label = "variant index";
    spec.y_label = "accuracy";
    int index = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string name, acc;
      std::getline(fields, name, ',');
      std::getline(fields, acc, ',');
      spec.series.push_back({name, {{static_cast<double>(index), std::stod(acc)}}});
      ++index;
    }
    if (fs::path(args.common.out).has_parent_path()) {
      fs::create_directories(fs::path(args.common.out).parent_path());
    }
    io::write_line_plot(args.common.out, spec);
  } else {
    throw IoError("unrecognized results csv header: " + header);
  }
  std::cout << "wrote " << args.common.out << "\n";
  return 0;
}

}  // namespace stfgacn::cli
