#include "stfgacn/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include <json.hpp>

namespace stfgacn::io {

namespace {

using nlohmann::json;

void put_u64_le(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

std::uint64_t get_u64_le(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

void put_f64_le(std::ostream& out, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, 8);
  put_u64_le(out, bits);
}

double get_f64_le(std::istream& in) {
  const std::uint64_t bits = get_u64_le(in);
  double d;
  std::memcpy(&d, &bits, 8);
  return d;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& file, const nn::Model& model,
                      const Eigen::VectorXd& params, const std::vector<int>& lanes,
                      std::uint64_t seed, const std::map<std::string, double>& hyperparameters) {
  if (params.size() != model.store().size()) {
    throw ShapeMismatch("checkpoint params of size " + std::to_string(params.size()) +
                        " do not match model layout of size " +
                        std::to_string(model.store().size()));
  }
  const nn::ModelConfig& cfg = model.config();
  json header;
  header["format_version"] = 1;
  header["variant"] = nn::variant_name(cfg.variant);
  header["model"] = {{"n_lanes", cfg.n_lanes},
                     {"seq_len", cfg.seq_len},
                     {"hidden", cfg.hidden},
                     {"subnets", cfg.subnets}};
  header["lanes"] = lanes;
  header["param_count"] = params.size();
  header["seed"] = seed;
  header["hyperparameters"] = hyperparameters;
  json blocks = json::array();
  for (const nn::ParamBlock& b : model.store().blocks()) {
    blocks.push_back(
        {{"name", b.name}, {"rows", b.rows}, {"cols", b.cols}, {"offset", b.offset}});
  }
  header["blocks"] = blocks;
  const std::string header_text = header.dump();

  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + file.string() + " for writing");
  }
  out.write(kCheckpointMagic, 8);
  put_u64_le(out, header_text.size());
  out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
  for (Eigen::Index i = 0; i < params.size(); ++i) put_f64_le(out, params(i));
  if (!out) {
    throw IoError("write failed for " + file.string());
  }
}

Checkpoint read_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open checkpoint " + file.string());
  }
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kCheckpointMagic, 8) != 0) {
    throw IoError(file.string() + " is not a checkpoint file");
  }
  const std::uint64_t header_len = get_u64_le(in);
  std::string header_text(header_len, '\0');
  in.read(header_text.data(), static_cast<std::streamsize>(header_len));
  if (!in) {
    throw IoError("truncated checkpoint header in " + file.string());
  }
  const json header = json::parse(header_text);
  if (header.at("format_version").get<int>() != 1) {
    throw IoError("unsupported checkpoint format version");
  }

  Checkpoint ckpt;
  const auto variant = nn::parse_variant(header.at("variant").get<std::string>());
  if (!variant) {
    throw IoError("unknown variant in checkpoint: " + header.at("variant").get<std::string>());
  }
  ckpt.model_config.variant = *variant;
  const json& model = header.at("model");
  ckpt.model_config.n_lanes = model.at("n_lanes").get<int>();
  ckpt.model_config.seq_len = model.at("seq_len").get<int>();
  ckpt.model_config.hidden = model.at("hidden").get<int>();
  ckpt.model_config.subnets = model.at("subnets").get<std::vector<std::vector<int>>>();
  ckpt.lanes = header.at("lanes").get<std::vector<int>>();
  ckpt.seed = header.at("seed").get<std::uint64_t>();
  if (header.contains("hyperparameters")) {
    ckpt.hyperparameters = header.at("hyperparameters").get<std::map<std::string, double>>();
  }

  const Eigen::Index count = header.at("param_count").get<Eigen::Index>();
  ckpt.params.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    ckpt.params(i) = get_f64_le(in);
    if (!in) {
      throw IoError("truncated parameter array in " + file.string());
    }
  }
  return ckpt;
}

}  // namespace stfgacn::io
