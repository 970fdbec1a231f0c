#pragma once

#include <Eigen/Core>
#include <vector>

#include "stfgacn/nn_params.hpp"

namespace stfgacn::nn {

// Layers run on "lanes": matrices with one row per independent stream (the
// radar nodes), so the whole network advances all nodes per time step with
// dense matrix products. Every layer has a hand-derived backward pass that
// accumulates into a flat gradient vector congruent with the ParameterStore.

using MatSeq = std::vector<Eigen::MatrixXd>;  // one lanes x features matrix per step

/// Gated recurrent cell:
///   s_t = sigmoid(W_s x_t + V_s h_{t-1} + b_s)          (update gate)
///   z_t = sigmoid(W_z x_t + V_z h_{t-1} + b_z)          (reset gate)
///   c_t = tanh(W_c x_t + V_c (h_{t-1} .* z_t + b_c))    (candidate; bias
///                                                        inside the reset
///                                                        product)
///   h_t = s_t .* c_t + h_{t-1} .* (1 - s_t)
struct GruLayer {
  int input_dim = 0;
  int hidden_dim = 0;
  int w_s = -1, v_s = -1, b_s = -1;
  int w_z = -1, v_z = -1, b_z = -1;
  int w_c = -1, v_c = -1, b_c = -1;

  void declare(ParameterStore& store, const std::string& prefix, int input, int hidden);

  struct StepCache {
    Eigen::MatrixXd s, z, c, r;  // lanes x hidden; r = h_prev .* z + b_c
  };
  struct Cache {
    std::vector<StepCache> steps;
    Eigen::MatrixXd h0;  // initial state (zeros)
    MatSeq h;            // h[k] = state after step k; K entries
  };

  /// One step over all lanes. x: lanes x input, h_prev: lanes x hidden.
  Eigen::MatrixXd step(const ParameterStore& store, const Eigen::VectorXd& params,
                       const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                       StepCache* cache = nullptr) const;

  /// Full sequence; xs[k] is lanes x input.
  void forward(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& xs,
               Cache& cache) const;

  /// dh_seq[k] is the gradient arriving at h[k] from above (may be empty for
  /// steps without direct consumers). Accumulates parameter gradients into
  /// grad; writes per-step input gradients into dx_seq when non-null.
  void backward(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& xs,
                const Cache& cache, const MatSeq& dh_seq, Eigen::VectorXd& grad,
                MatSeq* dx_seq) const;
};

/// Temporal attention over a hidden sequence:
///   u_i = tanh(w_u . h_i + b_u),  alpha = softmax(u),  o = sum_i alpha_i h_i.
/// The reweight mode emits the attention-scaled sequence K*alpha_i*h_i
/// instead of the pooled sum; uniform attention then passes the sequence
/// through unchanged.
struct AttentionLayer {
  int hidden_dim = 0;
  int w_u = -1, b_u = -1;  // w_u: hidden x 1, b_u: 1 x 1

  void declare(ParameterStore& store, const std::string& prefix, int hidden);

  struct Cache {
    Eigen::MatrixXd scores;  // lanes x K, tanh scores u
    Eigen::MatrixXd alpha;   // lanes x K, softmax weights
  };

  /// Pooled output: lanes x hidden.
  Eigen::MatrixXd forward_pool(const ParameterStore& store, const Eigen::VectorXd& params,
                               const MatSeq& hs, Cache& cache) const;
  void backward_pool(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& hs,
                     const Cache& cache, const Eigen::MatrixXd& d_out, Eigen::VectorXd& grad,
                     MatSeq& dh_seq) const;

  MatSeq forward_reweight(const ParameterStore& store, const Eigen::VectorXd& params,
                          const MatSeq& hs, Cache& cache) const;
  void backward_reweight(const ParameterStore& store, const Eigen::VectorXd& params,
                         const MatSeq& hs, const Cache& cache, const MatSeq& d_out,
                         Eigen::VectorXd& grad, MatSeq& dh_seq) const;

 private:
  void compute_alpha(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& hs,
                     Cache& cache) const;
  /// Common tail: given d_alpha and per-step direct gradients already in
  /// dh_seq, backpropagate through softmax and the tanh scores.
  void backward_scores(const ParameterStore& store, const Eigen::VectorXd& params,
                       const MatSeq& hs, const Cache& cache, const Eigen::MatrixXd& d_alpha,
                       Eigen::VectorXd& grad, MatSeq& dh_seq) const;
};

/// First-order graph convolution: G = (Ahat * O) * W_g^T. Neighborhood
/// aggregation across lanes, then feature mixing.
struct GraphConvLayer {
  int input_dim = 0;
  int output_dim = 0;
  int w_g = -1;

  void declare(ParameterStore& store, const std::string& prefix, int input, int output);

  Eigen::MatrixXd forward(const ParameterStore& store, const Eigen::VectorXd& params,
                          const Eigen::MatrixXd& ahat, const Eigen::MatrixXd& features) const;
  /// d_features is written (not accumulated).
  void backward(const ParameterStore& store, const Eigen::VectorXd& params,
                const Eigen::MatrixXd& ahat, const Eigen::MatrixXd& features,
                const Eigen::MatrixXd& d_out, Eigen::VectorXd& grad,
                Eigen::MatrixXd& d_features) const;
};

/// Width-3 valid temporal convolution with tanh activation; the CNN stand-in
/// for the recurrent blocks in the temporal-convolution ablation.
struct TemporalConvLayer {
  int input_dim = 0;
  int output_dim = 0;
  static constexpr int kWidth = 3;
  int w0 = -1, w1 = -1, w2 = -1, bias = -1;

  void declare(ParameterStore& store, const std::string& prefix, int input, int output);

  struct Cache {
    MatSeq y;  // activated outputs, K-2 steps
  };

  void forward(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& xs,
               Cache& cache) const;
  void backward(const ParameterStore& store, const Eigen::VectorXd& params, const MatSeq& xs,
                const Cache& cache, const MatSeq& d_out, Eigen::VectorXd& grad,
                MatSeq& dx_seq) const;
};

/// Classification head: width-5 valid convolution along the concatenated
/// feature vector, layer normalization, dense layer to 2 logits, softmax.
struct DecoderLayer {
  int input_len = 0;   // L; conv output length is L - 4
  int conv_w = -1;     // 5 x 1
  int conv_b = -1;     // 1 x 1
  int ln_gain = -1;    // (L-4) x 1
  int ln_bias = -1;    // (L-4) x 1
  int w_dense = -1;    // 2 x (L-4)
  int b_dense = -1;    // 2 x 1
  static constexpr double kLayerNormEpsilon = 1e-5;

  void declare(ParameterStore& store, const std::string& prefix, int input_len);

  struct Cache {
    Eigen::VectorXd input;       // L
    Eigen::VectorXd conv;        // L-4
    Eigen::VectorXd normalized;  // (conv - mean) / sqrt(var + eps)
    double inv_sigma = 0.0;
    Eigen::VectorXd ln_out;
    Eigen::Vector2d logits;
    Eigen::Vector2d probs;
  };

  Eigen::Vector2d forward(const ParameterStore& store, const Eigen::VectorXd& params,
                          const Eigen::VectorXd& input, Cache& cache) const;
  void backward(const ParameterStore& store, const Eigen::VectorXd& params, const Cache& cache,
                const Eigen::Vector2d& d_logits, Eigen::VectorXd& grad,
                Eigen::VectorXd& d_input) const;
};

/// Numerically stable softmax (max subtraction), row vector in/out.
Eigen::VectorXd softmax(const Eigen::VectorXd& scores);

}  // namespace stfgacn::nn
