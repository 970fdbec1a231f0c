#include "stfgacn/dataset_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace stfgacn::io {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_sig(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

namespace {

json radar_to_json(const sim::RadarConfig& r) {
  return json{{"id", r.id},
              {"position_m", {r.position.x(), r.position.y(), r.position.z()}},
              {"carrier_frequency_hz", r.carrier_frequency_hz},
              {"subnet_id", r.subnet_id}};
}

sim::RadarConfig radar_from_json(const json& j) {
  sim::RadarConfig r;
  r.id = j.at("id").get<int>();
  const auto& p = j.at("position_m");
  r.position = Eigen::Vector3d(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>());
  r.carrier_frequency_hz = j.at("carrier_frequency_hz").get<double>();
  r.subnet_id = j.at("subnet_id").get<int>();
  return r;
}

json profile_to_json(const sim::AircraftProfile& p) {
  return json{{"class_label", p.class_label},
              {"speed_mps", p.speed_mps},
              {"micro_f1_hz", p.micro_f1_hz},
              {"micro_f2_hz", p.micro_f2_hz},
              {"micro_amp1_rad", p.micro_amp1_rad},
              {"micro_amp2_rad", p.micro_amp2_rad},
              {"base_rcs_dbsm", p.base_rcs_dbsm}};
}

sim::AircraftProfile profile_from_json(const json& j) {
  sim::AircraftProfile p;
  p.class_label = j.at("class_label").get<int>();
  p.speed_mps = j.at("speed_mps").get<double>();
  p.micro_f1_hz = j.at("micro_f1_hz").get<double>();
  p.micro_f2_hz = j.at("micro_f2_hz").get<double>();
  p.micro_amp1_rad = j.at("micro_amp1_rad").get<double>();
  p.micro_amp2_rad = j.at("micro_amp2_rad").get<double>();
  p.base_rcs_dbsm = j.at("base_rcs_dbsm").get<double>();
  return p;
}

void write_text_file(const fs::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + file.string() + " for writing");
  }
  out << content;
  if (!out) {
    throw IoError("write failed for " + file.string());
  }
}

std::string read_text_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + file.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json scenario_to_json(const Scenario& sc) {
  const sim::Simulator& simulator = sc.simulator;
  json j;
  j["radars"] = json::array();
  for (const auto& r : sc.radars) j["radars"].push_back(radar_to_json(r));
  j["profiles"] = json::array();
  for (const auto& p : sc.profiles) j["profiles"].push_back(profile_to_json(p));
  j["simulator"] = {
      {"sample_rate_hz", simulator.sample_rate_hz},
      {"duration_s", simulator.duration_s},
      {"max_geometry_retries", simulator.max_geometry_retries},
      {"los_noise",
       {{"rho", simulator.base_noise.rho},
        {"sigma_phi", simulator.base_noise.sigma_phi},
        {"sigma_theta", simulator.base_noise.sigma_theta}}},
      {"surrogate",
       {{"lobe_theta_db", simulator.rcs.lobe_theta_db},
        {"lobe_phi_db", simulator.rcs.lobe_phi_db},
        {"lobe_fc_db", simulator.rcs.lobe_fc_db},
        {"electrical_length_m", simulator.rcs.electrical_length_m},
        {"reference_angle_rad", simulator.rcs.reference_angle_rad}}},
      {"trajectory",
       {{"altitude_m", simulator.trajectory.altitude_m},
        {"start_x_min_m", simulator.trajectory.start_x_min_m},
        {"start_x_max_m", simulator.trajectory.start_x_max_m},
        {"start_y_min_m", simulator.trajectory.start_y_min_m},
        {"start_y_max_m", simulator.trajectory.start_y_max_m},
        {"heading_min_rad", simulator.trajectory.heading_min_rad},
        {"heading_max_rad", simulator.trajectory.heading_max_rad},
        {"start_time_min_s", simulator.trajectory.start_time_min_s},
        {"start_time_max_s", simulator.trajectory.start_time_max_s}}}};
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  for (const json& r : j.at("radars")) sc.radars.push_back(radar_from_json(r));
  for (const json& p : j.at("profiles")) sc.profiles.push_back(profile_from_json(p));
  sim::Simulator& simulator = sc.simulator;
  const json& s = j.at("simulator");
  simulator.sample_rate_hz = s.at("sample_rate_hz").get<double>();
  simulator.duration_s = s.at("duration_s").get<double>();
  simulator.max_geometry_retries = s.at("max_geometry_retries").get<int>();
  const json& noise = s.at("los_noise");
  simulator.base_noise.rho = noise.at("rho").get<double>();
  simulator.base_noise.sigma_phi = noise.at("sigma_phi").get<double>();
  simulator.base_noise.sigma_theta = noise.at("sigma_theta").get<double>();
  const json& surrogate = s.at("surrogate");
  simulator.rcs.lobe_theta_db = surrogate.at("lobe_theta_db").get<double>();
  simulator.rcs.lobe_phi_db = surrogate.at("lobe_phi_db").get<double>();
  simulator.rcs.lobe_fc_db = surrogate.at("lobe_fc_db").get<double>();
  simulator.rcs.electrical_length_m = surrogate.at("electrical_length_m").get<double>();
  simulator.rcs.reference_angle_rad = surrogate.at("reference_angle_rad").get<double>();
  const json& traj = s.at("trajectory");
  simulator.trajectory.altitude_m = traj.at("altitude_m").get<double>();
  simulator.trajectory.start_x_min_m = traj.at("start_x_min_m").get<double>();
  simulator.trajectory.start_x_max_m = traj.at("start_x_max_m").get<double>();
  simulator.trajectory.start_y_min_m = traj.at("start_y_min_m").get<double>();
  simulator.trajectory.start_y_max_m = traj.at("start_y_max_m").get<double>();
  simulator.trajectory.heading_min_rad = traj.at("heading_min_rad").get<double>();
  simulator.trajectory.heading_max_rad = traj.at("heading_max_rad").get<double>();
  simulator.trajectory.start_time_min_s = traj.at("start_time_min_s").get<double>();
  simulator.trajectory.start_time_max_s = traj.at("start_time_max_s").get<double>();
  return sc;
}

}  // namespace

std::string scenario_to_json_text(const Scenario& scenario, int indent) {
  return scenario_to_json(scenario).dump(indent);
}

Scenario scenario_from_json_text(const std::string& text) {
  return scenario_from_json(json::parse(text));
}

void write_dataset(const fs::path& dir, const DatasetBundle& bundle) {
  fs::create_directories(dir);
  const Scenario& sc = bundle.scenario;
  const sim::Simulator& simulator = sc.simulator;

  json manifest;
  manifest["format_version"] = kDatasetFormatVersion;
  manifest["master_seed"] = bundle.master_seed;
  if (bundle.snr_db) {
    manifest["snr_db"] = *bundle.snr_db;
  } else {
    manifest["snr_db"] = "clean";
  }
  manifest["count_per_class"] = bundle.count_per_class;
  manifest["scenario"] = scenario_to_json(sc);
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

  // segments.csv
  std::ostringstream csv;
  const int k_samples = bundle.samples.empty() ? simulator.samples_per_segment()
                                               : static_cast<int>(bundle.samples[0].signals.cols());
  csv << "segment_id,radar_id,class_label,snr_db";
  for (int k = 0; k < k_samples; ++k) csv << ",s" << k;
  csv << "\n";
  for (const GraphSample& s : bundle.samples) {
    for (Eigen::Index n = 0; n < s.signals.rows(); ++n) {
      csv << s.sample_id << "," << sc.radars[static_cast<std::size_t>(n)].id << "," << s.label
          << ",";
      if (s.snr_db) {
        csv << format_sig(*s.snr_db, 9);
      } else {
        csv << "clean";
      }
      for (Eigen::Index k = 0; k < s.signals.cols(); ++k) {
        csv << "," << format_sig(s.signals(n, k), 9);
      }
      csv << "\n";
    }
  }
  write_text_file(dir / "segments.csv", csv.str());

  // graph.csv: dense adjacency, full precision.
  const graph::RadarGraph g = graph::build_adjacency(sc.radars);
  std::ostringstream gcsv;
  for (Eigen::Index i = 0; i < g.adjacency.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.adjacency.cols(); ++j) {
      if (j > 0) gcsv << ",";
      gcsv << format_sig(g.adjacency(i, j), 17);
    }
    gcsv << "\n";
  }
  write_text_file(dir / "graph.csv", gcsv.str());
}

DatasetBundle read_dataset(const fs::path& dir) {
  DatasetBundle bundle;
  const json manifest = json::parse(read_text_file(dir / "manifest.json"));
  if (manifest.at("format_version").get<int>() != kDatasetFormatVersion) {
    throw IoError("unsupported dataset format version in " + (dir / "manifest.json").string());
  }
  bundle.master_seed = manifest.at("master_seed").get<std::uint64_t>();
  if (manifest.at("snr_db").is_string()) {
    bundle.snr_db = std::nullopt;
  } else {
    bundle.snr_db = manifest.at("snr_db").get<double>();
  }
  bundle.count_per_class = manifest.at("count_per_class").get<int>();
  bundle.scenario = scenario_from_json(manifest.at("scenario"));
  const Scenario& sc = bundle.scenario;

  // segments.csv -> samples keyed by segment id, radar rows in manifest order.
  std::map<int, Eigen::Index> radar_row;
  for (std::size_t i = 0; i < sc.radars.size(); ++i) {
    radar_row[sc.radars[i].id] = static_cast<Eigen::Index>(i);
  }
  const std::string csv = read_text_file(dir / "segments.csv");
  std::istringstream lines(csv);
  std::string line;
  if (!std::getline(lines, line)) {
    throw IoError("segments.csv is empty");
  }
  const int k_samples = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 3;
  if (k_samples < 1) {
    throw IoError("segments.csv header is malformed");
  }

  std::map<long, GraphSample> by_id;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    const long segment_id = std::stol(field);
    std::getline(fields, field, ',');
    const int radar_id = std::stoi(field);
    std::getline(fields, field, ',');
    const int label = std::stoi(field);
    std::getline(fields, field, ',');
    std::optional<double> snr;
    if (field != "clean") snr = std::stod(field);

    GraphSample& sample = by_id[segment_id];
    if (sample.signals.size() == 0) {
      sample.signals.resize(static_cast<Eigen::Index>(sc.radars.size()), k_samples);
      sample.sample_id = segment_id;
      sample.label = label;
      sample.snr_db = snr;
    }
    const Eigen::Index row = radar_row.at(radar_id);
    for (int k = 0; k < k_samples; ++k) {
      if (!std::getline(fields, field, ',')) {
        throw IoError("segments.csv row truncated at sample " + std::to_string(k));
      }
      sample.signals(row, k) = std::stod(field);
    }
  }
  bundle.samples.reserve(by_id.size());
  for (auto& [id, sample] : by_id) {
    bundle.samples.push_back(std::move(sample));
  }
  return bundle;
}

void write_split_manifest(const fs::path& file, const graph::DatasetSplit& split,
                          std::uint64_t split_seed) {
  if (!split.normalization_stats) {
    throw IoError("split manifest requires normalization stats");
  }
  json j;
  j["format_version"] = kDatasetFormatVersion;
  j["split_seed"] = split_seed;
  j["normalization"] = {{"min_dbsm", split.normalization_stats->min_dbsm},
                        {"max_dbsm", split.normalization_stats->max_dbsm}};
  auto ids = [](const std::vector<GraphSample>& samples) {
    json arr = json::array();
    for (const GraphSample& s : samples) arr.push_back(s.sample_id);
    return arr;
  };
  j["train_ids"] = ids(split.train);
  j["test_ids"] = ids(split.test);
  j["validation_ids"] = ids(split.validation);
  write_text_file(file, j.dump(2) + "\n");
}

SplitManifest read_split_manifest(const fs::path& file) {
  const json j = json::parse(read_text_file(file));
  SplitManifest m;
  m.split_seed = j.at("split_seed").get<std::uint64_t>();
  m.normalization.min_dbsm = j.at("normalization").at("min_dbsm").get<double>();
  m.normalization.max_dbsm = j.at("normalization").at("max_dbsm").get<double>();
  m.train_ids = j.at("train_ids").get<std::vector<long>>();
  m.test_ids = j.at("test_ids").get<std::vector<long>>();
  m.validation_ids = j.at("validation_ids").get<std::vector<long>>();
  return m;
}

graph::DatasetSplit apply_split_manifest(const std::vector<GraphSample>& samples,
                                         const SplitManifest& manifest) {
  std::map<long, const GraphSample*> by_id;
  for (const GraphSample& s : samples) by_id[s.sample_id] = &s;
  auto collect = [&](const std::vector<long>& ids) {
    std::vector<GraphSample> out;
    out.reserve(ids.size());
    for (long id : ids) {
      auto it = by_id.find(id);
      if (it == by_id.end()) {
        throw IoError("split manifest references unknown sample id " + std::to_string(id));
      }
      out.push_back(*it->second);
    }
    return out;
  };
  graph::DatasetSplit split;
  split.train = collect(manifest.train_ids);
  split.test = collect(manifest.test_ids);
  split.validation = collect(manifest.validation_ids);
  graph::min_max_normalize(split.train, manifest.normalization);
  graph::min_max_normalize(split.test, manifest.normalization);
  graph::min_max_normalize(split.validation, manifest.normalization);
  split.normalization_stats = manifest.normalization;
  return split;
}

}  // namespace stfgacn::io
