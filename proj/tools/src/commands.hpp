#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace stfgacn::cli {

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::string> scale;
  std::optional<int> jobs;
  bool force = false;
};

struct SimulateArgs {
  CommonArgs common;
  std::optional<int> count_per_class;
  std::optional<std::string> snr_text;  // "clean" or decibels
};

struct TrainArgs {
  CommonArgs common;
  std::string data_dir;
  std::optional<std::string> variant;
  std::optional<int> epochs;
  std::optional<int> hidden;
  std::optional<int> batch_size;
  std::optional<double> learning_rate;
  std::optional<std::uint64_t> split_seed;
  std::optional<int> radar_index;
  bool init_zero = false;  // keep the freshly built model at all-zero weights
};

struct EvalArgs {
  CommonArgs common;
  std::string checkpoint;
  std::string data_dir;
  std::string split = "test";  // train|test|validation|all|full
  std::optional<std::string> split_manifest;
};

struct SweepArgs {
  CommonArgs common;
  std::optional<std::vector<std::string>> variants;
  std::optional<std::vector<double>> snr_list_db;
  std::optional<std::vector<std::uint64_t>> seeds;
};

struct AblateArgs {
  CommonArgs common;
  std::optional<std::vector<std::string>> variants;
  std::optional<double> snr_db;
};

struct PlotArgs {
  CommonArgs common;  // out is the .svg file path
  std::string results_csv;
};

int cmd_simulate(const SimulateArgs& args);
int cmd_train(const TrainArgs& args);
int cmd_eval(const EvalArgs& args);
int cmd_sweep(const SweepArgs& args);
int cmd_ablate(const AblateArgs& args);
int cmd_plot(const PlotArgs& args);

}  // namespace stfgacn::cli
