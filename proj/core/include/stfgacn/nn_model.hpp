#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stfgacn/nn_layers.hpp"
#include "stfgacn/nn_params.hpp"

namespace stfgacn::nn {

enum class Variant {
  kGru,        // single radar, recurrent state, last hidden state as feature
  kAttGru,     // single radar, recurrent state with attention pooling
  kStgcnLike,  // full graph, width-3 temporal convolutions instead of ATT-GRU
  kStfgacn1F,  // single-subnet (homogeneous) graph, full stack
  kStfgacn2F,  // full heterogeneous graph, full stack
  kFft,        // spectral template baseline (not a neural model)
  kFft9,       // per-radar spectral baselines with majority vote
  kGru9,       // per-radar GRU classifiers with majority vote
};

const char* variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);
bool variant_is_neural(Variant v);
bool variant_uses_graph(Variant v);

struct ModelConfig {
  Variant variant = Variant::kStfgacn2F;
  int n_lanes = 1;   // rows of the signal matrix the model consumes
  int seq_len = 200;
  int hidden = 64;
  std::vector<std::vector<int>> subnets;  // lane groups, graph variants only
};

/// Per-sample forward state kept for the hand-derived backward pass.
struct ForwardCache {
  MatSeq xs;
  GruLayer::Cache node_gru;
  AttentionLayer::Cache node_att;
  MatSeq node_seq;  // attention-reweighted node hidden sequence
  MatSeq gcn_out;
  GruLayer::Cache subnet_gru;
  AttentionLayer::Cache subnet_att;
  Eigen::MatrixXd pooled;           // lanes x hidden
  TemporalConvLayer::Cache conv1;
  MatSeq conv_gcn_out;
  TemporalConvLayer::Cache conv2;
  Eigen::MatrixXd time_mean;        // lanes x hidden
  Eigen::VectorXd decoder_input;
  DecoderLayer::Cache decoder;
};

struct BatchItem {
  const Eigen::MatrixXd* signals = nullptr;  // n_lanes x seq_len
  int label = 0;
};

/// One trainable network. The node layer runs a shared ATT-GRU over each
/// lane's scalar sequence; the subnet layer applies the first-order graph
/// convolution per time step and distills each lane's sequence with a second
/// ATT-GRU; lanes are mean-pooled within subnets and the decoder classifies
/// the concatenated subnet features.
class Model {
 public:
  explicit Model(ModelConfig config);

  const ModelConfig& config() const { return config_; }
  ParameterStore& params() { return store_; }
  const ParameterStore& store() const { return store_; }

  static constexpr double kProbClip = 1e-12;

  Eigen::Vector2d forward(const Eigen::VectorXd& params, const Eigen::MatrixXd& signals,
                          const Eigen::MatrixXd& ahat, ForwardCache& cache) const;

  /// Mean cross-entropy over the batch plus gradients congruent with the
  /// flat parameter layout. Throws NonFiniteLoss when anything diverges.
  double loss_and_gradients(const Eigen::VectorXd& params, const std::vector<BatchItem>& batch,
                            const Eigen::MatrixXd& ahat, Eigen::VectorXd& grad) const;

  double loss_only(const Eigen::VectorXd& params, const std::vector<BatchItem>& batch,
                   const Eigen::MatrixXd& ahat) const;

  /// Exposed for gradient tests: backward for a single already-forwarded
  /// sample with the given logit gradient.
  void backward(const Eigen::VectorXd& params, const Eigen::MatrixXd& signals,
                const Eigen::MatrixXd& ahat, const ForwardCache& cache,
                const Eigen::Vector2d& d_logits, Eigen::VectorXd& grad) const;

 private:
  void check_signals(const Eigen::MatrixXd& signals) const;
  Eigen::VectorXd flatten_subnet_means(const Eigen::MatrixXd& per_lane) const;
  Eigen::MatrixXd unflatten_subnet_means(const Eigen::VectorXd& d_flat, Eigen::Index lanes) const;

  ModelConfig config_;
  ParameterStore store_;
  GruLayer node_gru_;
  AttentionLayer node_att_;
  GraphConvLayer gcn_;
  GruLayer subnet_gru_;
  AttentionLayer subnet_att_;
  TemporalConvLayer conv1_;
  TemporalConvLayer conv2_;
  DecoderLayer decoder_;
};

}  // namespace stfgacn::nn
