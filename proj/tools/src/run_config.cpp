#include "run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "stfgacn/common.hpp"
#include "stfgacn/dataset_io.hpp"

namespace stfgacn::cli {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (allowed.find(key) == allowed.end()) {
      throw ConfigError("unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void read_field(const json& obj, const char* key, std::optional<T>& out) {
  if (obj.contains(key)) {
    out = obj.at(key).get<T>();
  }
}

}  // namespace

std::optional<double> parse_snr(const std::string& text) {
  if (text == "clean") {
    return std::nullopt;
  }
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    if (pos != text.size()) {
      throw ConfigError("invalid snr value '" + text + "'");
    }
    return value;
  } catch (const std::exception&) {
    throw ConfigError("invalid snr value '" + text + "' (expected a number or 'clean')");
  }
}

AppConfig load_config(const std::string& path) {
  AppConfig cfg;
  if (path.empty()) {
    return cfg;
  }
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config file not found: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }

  check_keys(j, {"seed", "scale", "jobs", "scenario", "dataset", "train", "sweep", "ablate"}, "");

  try {
    read_field(j, "seed", cfg.seed);
    read_field(j, "scale", cfg.scale);
    read_field(j, "jobs", cfg.jobs);
    if (cfg.scale && *cfg.scale != "desk" && *cfg.scale != "paper") {
      throw ConfigError("scale must be 'desk' or 'paper', got '" + *cfg.scale + "'");
    }

    if (j.contains("scenario")) {
      cfg.scenario = io::scenario_from_json_text(j.at("scenario").dump());
    }

    if (j.contains("dataset")) {
      const json& d = j.at("dataset");
      check_keys(d, {"count_per_class", "snr_db"}, "dataset.");
      read_field(d, "count_per_class", cfg.count_per_class);
      if (d.contains("snr_db")) {
        cfg.snr_present = true;
        if (d.at("snr_db").is_string()) {
          if (d.at("snr_db").get<std::string>() != "clean") {
            throw ConfigError("dataset.snr_db must be a number or 'clean'");
          }
          cfg.snr_db = std::nullopt;
        } else {
          cfg.snr_db = d.at("snr_db").get<double>();
        }
      }
    }

    if (j.contains("train")) {
      const json& t = j.at("train");
      check_keys(t,
                 {"variant", "hidden", "batch_size", "initial_lr", "step_decay",
                  "decay_period_epochs", "max_epochs", "patience", "split_seed", "radar_index"},
                 "train.");
      read_field(t, "variant", cfg.variant);
      read_field(t, "hidden", cfg.hidden);
      read_field(t, "batch_size", cfg.batch_size);
      read_field(t, "initial_lr", cfg.initial_lr);
      read_field(t, "step_decay", cfg.step_decay);
      read_field(t, "decay_period_epochs", cfg.decay_period_epochs);
      read_field(t, "max_epochs", cfg.max_epochs);
      read_field(t, "patience", cfg.patience);
      read_field(t, "split_seed", cfg.split_seed);
      read_field(t, "radar_index", cfg.radar_index);
    }

    if (j.contains("sweep")) {
      const json& s = j.at("sweep");
      check_keys(s, {"variants", "snr_list_db", "seeds"}, "sweep.");
      read_field(s, "variants", cfg.sweep_variants);
      read_field(s, "snr_list_db", cfg.snr_list_db);
      read_field(s, "seeds", cfg.seeds);
    }

    if (j.contains("ablate")) {
      const json& a = j.at("ablate");
      check_keys(a, {"variants", "snr_db"}, "ablate.");
      read_field(a, "variants", cfg.ablate_variants);
      read_field(a, "snr_db", cfg.ablate_snr_db);
    }
  } catch (const json::exception& e) {
    throw ConfigError("config schema error in " + path + ": " + e.what());
  }
  return cfg;
}

}  // namespace stfgacn::cli
