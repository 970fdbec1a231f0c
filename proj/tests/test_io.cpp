#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "stfgacn/checkpoint.hpp"
#include "stfgacn/dataset_io.hpp"
#include "stfgacn/scenario.hpp"
#include "stfgacn/svg_plot.hpp"
#include "stfgacn/sweep.hpp"

using namespace stfgacn;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "stfgacn_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

io::DatasetBundle small_bundle(std::uint64_t seed) {
  io::DatasetBundle bundle;
  bundle.scenario = standard_scenario();
  bundle.master_seed = seed;
  bundle.snr_db = 5.0;
  bundle.count_per_class = 5;
  bundle.samples = bundle.scenario.simulator.generate_dataset(
      bundle.scenario.radars, bundle.scenario.profiles, 5, 5.0, seed);
  return bundle;
}

}  // namespace

TEST(DatasetIo, RoundTripPreservesValuesToNineDigits) {
  const fs::path dir = temp_dir("roundtrip");
  const io::DatasetBundle bundle = small_bundle(3);
  io::write_dataset(dir, bundle);
  const io::DatasetBundle loaded = io::read_dataset(dir);

  ASSERT_EQ(loaded.samples.size(), bundle.samples.size());
  EXPECT_EQ(loaded.master_seed, bundle.master_seed);
  EXPECT_EQ(loaded.count_per_class, bundle.count_per_class);
  ASSERT_TRUE(loaded.snr_db.has_value());
  EXPECT_DOUBLE_EQ(*loaded.snr_db, 5.0);
  ASSERT_EQ(loaded.scenario.radars.size(), 9u);
  for (std::size_t i = 0; i < bundle.samples.size(); ++i) {
    EXPECT_EQ(loaded.samples[i].sample_id, bundle.samples[i].sample_id);
    EXPECT_EQ(loaded.samples[i].label, bundle.samples[i].label);
    const double scale = bundle.samples[i].signals.cwiseAbs().maxCoeff() + 1.0;
    EXPECT_LE((loaded.samples[i].signals - bundle.samples[i].signals).cwiseAbs().maxCoeff(),
              1e-7 * scale);
  }
}

TEST(DatasetIo, RewriteIsByteIdentical) {
  const fs::path dir1 = temp_dir("bytes1");
  const fs::path dir2 = temp_dir("bytes2");
  io::write_dataset(dir1, small_bundle(9));
  io::write_dataset(dir2, small_bundle(9));
  EXPECT_EQ(slurp(dir1 / "segments.csv"), slurp(dir2 / "segments.csv"));
  EXPECT_EQ(slurp(dir1 / "manifest.json"), slurp(dir2 / "manifest.json"));
  EXPECT_EQ(slurp(dir1 / "graph.csv"), slurp(dir2 / "graph.csv"));
}

TEST(DatasetIo, CleanSentinelRoundTrips) {
  const fs::path dir = temp_dir("clean");
  io::DatasetBundle bundle = small_bundle(4);
  bundle.snr_db = std::nullopt;
  bundle.samples = bundle.scenario.simulator.generate_dataset(
      bundle.scenario.radars, bundle.scenario.profiles, 5, std::nullopt, 4);
  io::write_dataset(dir, bundle);
  const io::DatasetBundle loaded = io::read_dataset(dir);
  EXPECT_FALSE(loaded.snr_db.has_value());
  EXPECT_FALSE(loaded.samples.front().snr_db.has_value());
}

TEST(SplitManifest, RoundTripsValueIdentical) {
  const fs::path dir = temp_dir("split");
  const io::DatasetBundle bundle = small_bundle(5);
  graph::DatasetSplit split = graph::split_dataset(bundle.samples, 777);
  graph::normalize_split(split);
  io::write_split_manifest(dir / "split_manifest.json", split, 777);
  const io::SplitManifest manifest = io::read_split_manifest(dir / "split_manifest.json");

  EXPECT_EQ(manifest.split_seed, 777u);
  EXPECT_EQ(manifest.normalization.min_dbsm, split.normalization_stats->min_dbsm);
  EXPECT_EQ(manifest.normalization.max_dbsm, split.normalization_stats->max_dbsm);
  ASSERT_EQ(manifest.train_ids.size(), split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    EXPECT_EQ(manifest.train_ids[i], split.train[i].sample_id);
  }

  // Applying the manifest to the raw samples reproduces the split exactly.
  const graph::DatasetSplit rebuilt = io::apply_split_manifest(bundle.samples, manifest);
  ASSERT_EQ(rebuilt.train.size(), split.train.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    EXPECT_EQ(rebuilt.train[i].sample_id, split.train[i].sample_id);
    EXPECT_EQ(rebuilt.train[i].signals, split.train[i].signals);
  }
}

TEST(Checkpoint, RoundTripsBitExact) {
  const fs::path dir = temp_dir("ckpt");
  const graph::RadarGraph g = graph::build_adjacency(standard_scenario().radars);
  const experiment::VariantSetup setup =
      experiment::make_variant_setup(nn::Variant::kStfgacn2F, g, 24, 8);
  nn::Model model(setup.model_config);
  const Eigen::VectorXd params = model.store().make_initial(123);

  io::write_checkpoint(dir / "model.stfg", model, params, setup.lanes, 42,
                       {{"hidden", 8.0}, {"initial_lr", 1e-3}});
  const io::Checkpoint loaded = io::read_checkpoint(dir / "model.stfg");

  EXPECT_EQ(loaded.params, params);
  EXPECT_EQ(loaded.model_config.variant, nn::Variant::kStfgacn2F);
  EXPECT_EQ(loaded.model_config.n_lanes, 9);
  EXPECT_EQ(loaded.model_config.seq_len, 24);
  EXPECT_EQ(loaded.model_config.hidden, 8);
  EXPECT_EQ(loaded.lanes, setup.lanes);
  EXPECT_EQ(loaded.seed, 42u);
  EXPECT_DOUBLE_EQ(loaded.hyperparameters.at("hidden"), 8.0);

  // A model rebuilt from the header accepts the parameters.
  nn::Model rebuilt(loaded.model_config);
  EXPECT_EQ(rebuilt.store().size(), loaded.params.size());
}

TEST(Checkpoint, RejectsForeignFiles) {
  const fs::path dir = temp_dir("badckpt");
  std::ofstream(dir / "not_a_checkpoint.bin") << "hello world, definitely not a checkpoint";
  EXPECT_THROW(io::read_checkpoint(dir / "not_a_checkpoint.bin"), IoError);
}

TEST(SvgPlot, LegendCarriesEverySeries) {
  const fs::path dir = temp_dir("svg");
  io::PlotSpec spec;
  spec.title = "Accuracy vs SNR";
  spec.x_label = "SNR (dB)";
  spec.y_label = "accuracy";
  spec.series.push_back({"STFGACN-2F", {{-10, 0.7}, {0, 0.9}, {10, 0.99}}});
  spec.series.push_back({"GRU", {{-10, 0.5}, {0, 0.8}, {10, 0.95}}});
  io::write_line_plot(dir / "plot.svg", spec);
  const std::string svg = slurp(dir / "plot.svg");
  EXPECT_NE(svg.find("STFGACN-2F"), std::string::npos);
  EXPECT_NE(svg.find("GRU"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(FormatSig, NineSignificantDigits) {
  EXPECT_EQ(io::format_sig(1.23456789012345, 9), "1.23456789");
  EXPECT_EQ(io::format_sig(-0.000123456789, 9), "-0.000123456789");
  EXPECT_EQ(io::format_sig(0.0, 9), "0");
}

TEST(ScenarioJson, RoundTrips) {
  const Scenario sc = standard_scenario();
  const std::string text = io::scenario_to_json_text(sc);
  const Scenario back = io::scenario_from_json_text(text);
  ASSERT_EQ(back.radars.size(), sc.radars.size());
  for (std::size_t i = 0; i < sc.radars.size(); ++i) {
    EXPECT_EQ(back.radars[i].id, sc.radars[i].id);
    EXPECT_EQ(back.radars[i].position, sc.radars[i].position);
    EXPECT_EQ(back.radars[i].carrier_frequency_hz, sc.radars[i].carrier_frequency_hz);
  }
  EXPECT_EQ(back.simulator.rcs.lobe_phi_db, sc.simulator.rcs.lobe_phi_db);
  EXPECT_EQ(back.simulator.trajectory.altitude_m, sc.simulator.trajectory.altitude_m);
}
