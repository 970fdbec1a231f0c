#include "stfgacn/nn_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace stfgacn::nn {

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kGru: return "GRU";
    case Variant::kAttGru: return "ATT-GRU";
    case Variant::kStgcnLike: return "STGCN-like";
    case Variant::kStfgacn1F: return "STFGACN-1F";
    case Variant::kStfgacn2F: return "STFGACN-2F";
    case Variant::kFft: return "FFT";
    case Variant::kFft9: return "FFT(9)";
    case Variant::kGru9: return "GRU(9)";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (key == "gru") return Variant::kGru;
  if (key == "attgru") return Variant::kAttGru;
  if (key == "stgcn" || key == "stgcnlike") return Variant::kStgcnLike;
  if (key == "stfgacn1f") return Variant::kStfgacn1F;
  if (key == "stfgacn2f" || key == "stfgacn") return Variant::kStfgacn2F;
  if (key == "fft") return Variant::kFft;
  if (key == "fft9") return Variant::kFft9;
  if (key == "gru9") return Variant::kGru9;
  return std::nullopt;
}

bool variant_is_neural(Variant v) {
  switch (v) {
    case Variant::kGru:
    case Variant::kAttGru:
    case Variant::kStgcnLike:
    case Variant::kStfgacn1F:
    case Variant::kStfgacn2F:
      return true;
    default:
      return false;
  }
}

bool variant_uses_graph(Variant v) {
  return v == Variant::kStgcnLike || v == Variant::kStfgacn1F || v == Variant::kStfgacn2F;
}

Model::Model(ModelConfig config) : config_(std::move(config)) {
  if (!variant_is_neural(config_.variant)) {
    throw ConfigError(std::string("variant ") + variant_name(config_.variant) +
                      " is not a trainable network");
  }
  if (config_.n_lanes < 1 || config_.seq_len < 1 || config_.hidden < 1) {
    throw ShapeMismatch("model configuration has non-positive dimensions");
  }
  const int hidden = config_.hidden;

  switch (config_.variant) {
    case Variant::kGru:
      node_gru_.declare(store_, "node_gru", 1, hidden);
      decoder_.declare(store_, "decoder", hidden);
      break;
    case Variant::kAttGru:
      node_gru_.declare(store_, "node_gru", 1, hidden);
      node_att_.declare(store_, "node_att", hidden);
      decoder_.declare(store_, "decoder", hidden);
      break;
    case Variant::kStgcnLike: {
      if (config_.subnets.empty()) {
        throw ConfigError("graph variants need at least one subnet");
      }
      conv1_.declare(store_, "conv1", 1, hidden);
      gcn_.declare(store_, "gcn", hidden, hidden);
      conv2_.declare(store_, "conv2", hidden, hidden);
      const int s = static_cast<int>(config_.subnets.size());
      decoder_.declare(store_, "decoder", s * hidden);
      break;
    }
    case Variant::kStfgacn1F:
    case Variant::kStfgacn2F: {
      if (config_.subnets.empty()) {
        throw ConfigError("graph variants need at least one subnet");
      }
      node_gru_.declare(store_, "node_gru", 1, hidden);
      node_att_.declare(store_, "node_att", hidden);
      gcn_.declare(store_, "gcn", hidden, hidden);
      subnet_gru_.declare(store_, "subnet_gru", hidden, hidden);
      subnet_att_.declare(store_, "subnet_att", hidden);
      const int s = static_cast<int>(config_.subnets.size());
      decoder_.declare(store_, "decoder", s * hidden);
      break;
    }
    default:
      break;
  }
  store_.finalize();
}

void Model::check_signals(const Eigen::MatrixXd& signals) const {
  if (signals.rows() != config_.n_lanes || signals.cols() != config_.seq_len) {
    throw ShapeMismatch("signals are " + std::to_string(signals.rows()) + "x" +
                        std::to_string(signals.cols()) + ", model expects " +
                        std::to_string(config_.n_lanes) + "x" + std::to_string(config_.seq_len));
  }
}

Eigen::VectorXd Model::flatten_subnet_means(const Eigen::MatrixXd& per_lane) const {
  const int hidden = config_.hidden;
  const int s_count = static_cast<int>(config_.subnets.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(s_count) * hidden);
  for (int s = 0; s < s_count; ++s) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(hidden);
    for (int lane : config_.subnets[s]) {
      mean += per_lane.row(lane);
    }
    mean /= static_cast<double>(config_.subnets[s].size());
    out.segment(static_cast<Eigen::Index>(s) * hidden, hidden) = mean.transpose();
  }
  return out;
}

Eigen::MatrixXd Model::unflatten_subnet_means(const Eigen::VectorXd& d_flat,
                                              Eigen::Index lanes) const {
  const int hidden = config_.hidden;
  Eigen::MatrixXd d_per_lane = Eigen::MatrixXd::Zero(lanes, hidden);
  for (std::size_t s = 0; s < config_.subnets.size(); ++s) {
    const double inv = 1.0 / static_cast<double>(config_.subnets[s].size());
    const Eigen::RowVectorXd d_mean =
        d_flat.segment(static_cast<Eigen::Index>(s) * hidden, hidden).transpose() * inv;
    for (int lane : config_.subnets[s]) {
      d_per_lane.row(lane) += d_mean;
    }
  }
  return d_per_lane;
}

Eigen::Vector2d Model::forward(const Eigen::VectorXd& params, const Eigen::MatrixXd& signals,
                               const Eigen::MatrixXd& ahat, ForwardCache& cache) const {
  check_signals(signals);
  const int k_steps = config_.seq_len;
  cache.xs.resize(k_steps);
  for (int k = 0; k < k_steps; ++k) {
    cache.xs[k] = signals.col(k);
  }

  switch (config_.variant) {
    case Variant::kGru: {
      node_gru_.forward(store_, params, cache.xs, cache.node_gru);
      cache.decoder_input = cache.node_gru.h.back().row(0).transpose();
      return decoder_.forward(store_, params, cache.decoder_input, cache.decoder);
    }
    case Variant::kAttGru: {
      node_gru_.forward(store_, params, cache.xs, cache.node_gru);
      cache.pooled = node_att_.forward_pool(store_, params, cache.node_gru.h, cache.node_att);
      cache.decoder_input = cache.pooled.row(0).transpose();
      return decoder_.forward(store_, params, cache.decoder_input, cache.decoder);
    }
    case Variant::kStgcnLike: {
      conv1_.forward(store_, params, cache.xs, cache.conv1);
      cache.conv_gcn_out.resize(cache.conv1.y.size());
      for (std::size_t k = 0; k < cache.conv1.y.size(); ++k) {
        cache.conv_gcn_out[k] = gcn_.forward(store_, params, ahat, cache.conv1.y[k]);
      }
      conv2_.forward(store_, params, cache.conv_gcn_out, cache.conv2);
      cache.time_mean = Eigen::MatrixXd::Zero(config_.n_lanes, config_.hidden);
      for (const Eigen::MatrixXd& y : cache.conv2.y) {
        cache.time_mean += y;
      }
      cache.time_mean /= static_cast<double>(cache.conv2.y.size());
      cache.decoder_input = flatten_subnet_means(cache.time_mean);
      return decoder_.forward(store_, params, cache.decoder_input, cache.decoder);
    }
    case Variant::kStfgacn1F:
    case Variant::kStfgacn2F: {
      node_gru_.forward(store_, params, cache.xs, cache.node_gru);
      cache.node_seq =
          node_att_.forward_reweight(store_, params, cache.node_gru.h, cache.node_att);
      cache.gcn_out.resize(cache.node_seq.size());
      for (std::size_t k = 0; k < cache.node_seq.size(); ++k) {
        cache.gcn_out[k] = gcn_.forward(store_, params, ahat, cache.node_seq[k]);
      }
      subnet_gru_.forward(store_, params, cache.gcn_out, cache.subnet_gru);
      cache.pooled =
          subnet_att_.forward_pool(store_, params, cache.subnet_gru.h, cache.subnet_att);
      cache.decoder_input = flatten_subnet_means(cache.pooled);
      return decoder_.forward(store_, params, cache.decoder_input, cache.decoder);
    }
    default:
      throw ConfigError("forward on a non-neural variant");
  }
}

void Model::backward(const Eigen::VectorXd& params, const Eigen::MatrixXd& signals,
                     const Eigen::MatrixXd& ahat, const ForwardCache& cache,
                     const Eigen::Vector2d& d_logits, Eigen::VectorXd& grad) const {
  const int k_steps = config_.seq_len;
  Eigen::VectorXd d_decoder_input;
  decoder_.backward(store_, params, cache.decoder, d_logits, grad, d_decoder_input);

  switch (config_.variant) {
    case Variant::kGru: {
      MatSeq dh(k_steps);
      dh.back() = d_decoder_input.transpose();
      node_gru_.backward(store_, params, cache.xs, cache.node_gru, dh, grad, nullptr);
      return;
    }
    case Variant::kAttGru: {
      MatSeq dh(k_steps, Eigen::MatrixXd::Zero(1, config_.hidden));
      node_att_.backward_pool(store_, params, cache.node_gru.h, cache.node_att,
                              d_decoder_input.transpose(), grad, dh);
      node_gru_.backward(store_, params, cache.xs, cache.node_gru, dh, grad, nullptr);
      return;
    }
    case Variant::kStgcnLike: {
      const Eigen::MatrixXd d_time_mean = unflatten_subnet_means(d_decoder_input, signals.rows());
      const double inv_steps = 1.0 / static_cast<double>(cache.conv2.y.size());
      MatSeq d_a2(cache.conv2.y.size(), d_time_mean * inv_steps);
      MatSeq d_g;
      conv2_.backward(store_, params, cache.conv_gcn_out, cache.conv2, d_a2, grad, d_g);
      MatSeq d_a1(cache.conv1.y.size());
      for (std::size_t k = 0; k < cache.conv1.y.size(); ++k) {
        gcn_.backward(store_, params, ahat, cache.conv1.y[k], d_g[k], grad, d_a1[k]);
      }
      MatSeq dx_unused;
      conv1_.backward(store_, params, cache.xs, cache.conv1, d_a1, grad, dx_unused);
      return;
    }
    case Variant::kStfgacn1F:
    case Variant::kStfgacn2F: {
      const Eigen::MatrixXd d_pooled = unflatten_subnet_means(d_decoder_input, signals.rows());
      MatSeq d_h2(k_steps, Eigen::MatrixXd::Zero(signals.rows(), config_.hidden));
      subnet_att_.backward_pool(store_, params, cache.subnet_gru.h, cache.subnet_att, d_pooled,
                                grad, d_h2);
      MatSeq d_gcn_in;
      subnet_gru_.backward(store_, params, cache.gcn_out, cache.subnet_gru, d_h2, grad, &d_gcn_in);
      MatSeq d_node_seq(k_steps);
      for (int k = 0; k < k_steps; ++k) {
        gcn_.backward(store_, params, ahat, cache.node_seq[k], d_gcn_in[k], grad, d_node_seq[k]);
      }
      MatSeq d_h1(k_steps, Eigen::MatrixXd::Zero(signals.rows(), config_.hidden));
      node_att_.backward_reweight(store_, params, cache.node_gru.h, cache.node_att, d_node_seq,
                                  grad, d_h1);
      node_gru_.backward(store_, params, cache.xs, cache.node_gru, d_h1, grad, nullptr);
      return;
    }
    default:
      throw ConfigError("backward on a non-neural variant");
  }
}

double Model::loss_and_gradients(const Eigen::VectorXd& params,
                                 const std::vector<BatchItem>& batch,
                                 const Eigen::MatrixXd& ahat, Eigen::VectorXd& grad) const {
  if (batch.empty()) {
    throw ConfigError("loss over an empty batch");
  }
  grad = Eigen::VectorXd::Zero(store_.size());
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  ForwardCache cache;
  for (const BatchItem& item : batch) {
    const Eigen::Vector2d probs = forward(params, *item.signals, ahat, cache);
    const double p = std::max(probs(item.label), kProbClip);
    loss -= std::log(p) * inv_batch;
    Eigen::Vector2d d_logits = probs;
    d_logits(item.label) -= 1.0;
    d_logits *= inv_batch;
    backward(params, *item.signals, ahat, cache, d_logits, grad);
  }
  if (!std::isfinite(loss) || !grad.allFinite()) {
    throw NonFiniteLoss("non-finite loss or gradient over batch of " +
                        std::to_string(batch.size()));
  }
  return loss;
}

double Model::loss_only(const Eigen::VectorXd& params, const std::vector<BatchItem>& batch,
                        const Eigen::MatrixXd& ahat) const {
  if (batch.empty()) {
    throw ConfigError("loss over an empty batch");
  }
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  ForwardCache cache;
  for (const BatchItem& item : batch) {
    const Eigen::Vector2d probs = forward(params, *item.signals, ahat, cache);
    loss -= std::log(std::max(probs(item.label), kProbClip)) * inv_batch;
  }
  if (!std::isfinite(loss)) {
    throw NonFiniteLoss("non-finite loss over batch of " + std::to_string(batch.size()));
  }
  return loss;
}

}  // namespace stfgacn::nn
