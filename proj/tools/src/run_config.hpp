#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stfgacn/scenario.hpp"

namespace stfgacn::cli {

/// Values read from a --config file. Every field is optional; command-line
/// flags override config values, which override built-in defaults.
struct AppConfig {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scale;  // "desk" | "paper"
  std::optional<int> jobs;

  std::optional<Scenario> scenario;

  // dataset
  std::optional<int> count_per_class;
  bool snr_present = false;
  std::optional<double> snr_db;  // nullopt with snr_present = clean sentinel

  // train
  std::optional<std::string> variant;
  std::optional<int> hidden;
  std::optional<int> batch_size;
  std::optional<double> initial_lr;
  std::optional<double> step_decay;
  std::optional<int> decay_period_epochs;
  std::optional<int> max_epochs;
  std::optional<int> patience;
  std::optional<std::uint64_t> split_seed;
  std::optional<int> radar_index;

  // sweep
  std::optional<std::vector<std::string>> sweep_variants;
  std::optional<std::vector<double>> snr_list_db;
  std::optional<std::vector<std::uint64_t>> seeds;

  // ablate
  std::optional<std::vector<std::string>> ablate_variants;
  std::optional<double> ablate_snr_db;
};

/// Parses and schema-validates a config file; unknown keys are errors.
AppConfig load_config(const std::string& path);

/// Parses "clean" or a decibel number.
std::optional<double> parse_snr(const std::string& text);

}  // namespace stfgacn::cli
