#include "stfgacn/nn_layers.hpp"

#include <cmath>

namespace stfgacn::nn {

namespace {

void check_cols(const Eigen::MatrixXd& m, int expected, const char* what) {
  if (m.cols() != expected) {
    throw ShapeMismatch(std::string(what) + ": got " + std::to_string(m.cols()) +
                        " columns, expected " + std::to_string(expected));
  }
}

Eigen::ArrayXXd sigmoid(const Eigen::MatrixXd& pre) {
  return 1.0 / (1.0 + (-pre.array()).exp());
}

}  // namespace

Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  const double m = scores.maxCoeff();
  Eigen::VectorXd e = (scores.array() - m).exp();
  return e / e.sum();
}

// ---------------------------------------------------------------------------
// GruLayer

void GruLayer::declare(ParameterStore& store, const std::string& prefix, int input, int hidden) {
  input_dim = input;
  hidden_dim = hidden;
  w_s = store.add(prefix + ".w_s", hidden, input, Init::kUniformFanIn, input);
  v_s = store.add(prefix + ".v_s", hidden, hidden, Init::kUniformFanIn, hidden);
  b_s = store.add(prefix + ".b_s", hidden, 1, Init::kZero);
  w_z = store.add(prefix + ".w_z", hidden, input, Init::kUniformFanIn, input);
  v_z = store.add(prefix + ".v_z", hidden, hidden, Init::kUniformFanIn, hidden);
  b_z = store.add(prefix + ".b_z", hidden, 1, Init::kZero);
  w_c = store.add(prefix + ".w_c", hidden, input, Init::kUniformFanIn, input);
  v_c = store.add(prefix + ".v_c", hidden, hidden, Init::kUniformFanIn, hidden);
  b_c = store.add(prefix + ".b_c", hidden, 1, Init::kZero);
}

Eigen::MatrixXd GruLayer::step(const ParameterStore& store, const Eigen::VectorXd& params,
                               const Eigen::MatrixXd& x, const Eigen::MatrixXd& h_prev,
                               StepCache* cache) const {
  check_cols(x, input_dim, "gru input");
  check_cols(h_prev, hidden_dim, "gru hidden state");
  if (x.rows() != h_prev.rows()) {
    throw ShapeMismatch("gru lanes mismatch: input has " + std::to_string(x.rows()) +
                        " rows, state has " + std::to_string(h_prev.rows()));
  }

  const auto Ws = store.view(params, w_s);
  const auto Vs = store.view(params, v_s);
  const auto bs = store.view(params, b_s);
  const auto Wz = store.view(params, w_z);
  const auto Vz = store.view(params, v_z);
  const auto bz = store.view(params, b_z);
  const auto Wc = store.view(params, w_c);
  const auto Vc = store.view(params, v_c);
  const auto bc = store.view(params, b_c);

  Eigen::MatrixXd s =
      sigmoid(((x * Ws.transpose() + h_prev * Vs.transpose()).rowwise() + bs.col(0).transpose()));
  Eigen::MatrixXd z =
      sigmoid(((x * Wz.transpose() + h_prev * Vz.transpose()).rowwise() + bz.col(0).transpose()));
  Eigen::MatrixXd r = (h_prev.array() * z.array()).matrix();
  r.rowwise() += bc.col(0).transpose();
  Eigen::MatrixXd c = (x * Wc.transpose() + r * Vc.transpose()).array().tanh().matrix();
  Eigen::MatrixXd h =
      (s.array() * c.array() + h_prev.array() * (1.0 - s.array())).matrix();

  if (cache != nullptr) {
    cache->s = std::move(s);
    cache->z = std::move(z);
    cache->c = std::move(c);
    cache->r = std::move(r);
  }
  return h;
}

void GruLayer::forward(const ParameterStore& store, const Eigen::VectorXd& params,
                       const MatSeq& xs, Cache& cache) const {
  const int k_steps = static_cast<int>(xs.size());
  const Eigen::Index lanes = xs.empty() ? 0 : xs.front().rows();
  cache.steps.resize(k_steps);
  cache.h.resize(k_steps);
  cache.h0 = Eigen::MatrixXd::Zero(lanes, hidden_dim);
  for (int k = 0; k < k_steps; ++k) {
    const Eigen::MatrixXd& h_prev = k == 0 ? cache.h0 : cache.h[k - 1];
    cache.h[k] = step(store, params, xs[k], h_prev, &cache.steps[k]);
  }
}

void GruLayer::backward(const ParameterStore& store, const Eigen::VectorXd& params,
                        const MatSeq& xs, const Cache& cache, const MatSeq& dh_seq,
                        Eigen::VectorXd& grad, MatSeq* dx_seq) const {
  const int k_steps = static_cast<int>(xs.size());
  const Eigen::Index lanes = xs.empty() ? 0 : xs.front().rows();

  const auto Ws = store.view(params, w_s);
  const auto Vs = store.view(params, v_s);
  const auto Wz = store.view(params, w_z);
  const auto Vz = store.view(params, v_z);
  const auto Wc = store.view(params, w_c);
  const auto Vc = store.view(params, v_c);

  auto dWs = store.view(grad, w_s);
  auto dVs = store.view(grad, v_s);
  auto dbs = store.view(grad, b_s);
  auto dWz = store.view(grad, w_z);
  auto dVz = store.view(grad, v_z);
  auto dbz = store.view(grad, b_z);
  auto dWc = store.view(grad, w_c);
  auto dVc = store.view(grad, v_c);
  auto dbc = store.view(grad, b_c);

  if (dx_seq != nullptr) {
    dx_seq->assign(k_steps, Eigen::MatrixXd());
  }

  Eigen::MatrixXd dh = Eigen::MatrixXd::Zero(lanes, hidden_dim);
  for (int k = k_steps - 1; k >= 0; --k) {
    if (k < static_cast<int>(dh_seq.size()) && dh_seq[k].size() != 0) {
      dh += dh_seq[k];
    }
    const StepCache& sc = cache.steps[k];
    const Eigen::MatrixXd& h_prev = k == 0 ? cache.h0 : cache.h[k - 1];

    const Eigen::ArrayXXd dc = dh.array() * sc.s.array();
    const Eigen::ArrayXXd ds = dh.array() * (sc.c.array() - h_prev.array());
    Eigen::MatrixXd dh_prev = (dh.array() * (1.0 - sc.s.array())).matrix();

    // Candidate branch: c = tanh(Wc x + Vc r), r = h_prev .* z + b_c.
    const Eigen::MatrixXd dpre_c = (dc * (1.0 - sc.c.array().square())).matrix();
    dWc.noalias() += dpre_c.transpose() * xs[k];
    dVc.noalias() += dpre_c.transpose() * sc.r;
    const Eigen::MatrixXd dr = dpre_c * Vc;
    dbc.col(0) += dr.colwise().sum().transpose();
    dh_prev.array() += dr.array() * sc.z.array();
    const Eigen::ArrayXXd dz = dr.array() * h_prev.array();

    const Eigen::MatrixXd dpre_z = (dz * sc.z.array() * (1.0 - sc.z.array())).matrix();
    dWz.noalias() += dpre_z.transpose() * xs[k];
    dVz.noalias() += dpre_z.transpose() * h_prev;
    dbz.col(0) += dpre_z.colwise().sum().transpose();
    dh_prev.noalias() += dpre_z * Vz;

    const Eigen::MatrixXd dpre_s = (ds * sc.s.array() * (1.0 - sc.s.array())).matrix();
    dWs.noalias() += dpre_s.transpose() * xs[k];
    dVs.noalias() += dpre_s.transpose() * h_prev;
    dbs.col(0) += dpre_s.colwise().sum().transpose();
    dh_prev.noalias() += dpre_s * Vs;

    if (dx_seq != nullptr) {
      (*dx_seq)[k] = dpre_c * Wc + dpre_z * Wz + dpre_s * Ws;
    }
    dh = std::move(dh_prev);
  }
}

// ---------------------------------------------------------------------------
// AttentionLayer

void AttentionLayer::declare(ParameterStore& store, const std::string& prefix, int hidden) {
  hidden_dim = hidden;
  w_u = store.add(prefix + ".w_u", hidden, 1, Init::kUniformFanIn, hidden);
  b_u = store.add(prefix + ".b_u", 1, 1, Init::kZero);
}

void AttentionLayer::compute_alpha(const ParameterStore& store, const Eigen::VectorXd& params,
                                   const MatSeq& hs, Cache& cache) const {
  if (hs.empty()) {
    throw ShapeMismatch("attention over an empty sequence");
  }
  const auto wu = store.view(params, w_u);
  const double bu = store.view(params, b_u)(0, 0);
  const int k_steps = static_cast<int>(hs.size());
  const Eigen::Index lanes = hs.front().rows();

  cache.scores.resize(lanes, k_steps);
  for (int k = 0; k < k_steps; ++k) {
    check_cols(hs[k], hidden_dim, "attention input");
    cache.scores.col(k) = ((hs[k] * wu).array() + bu).tanh().matrix();
  }
  // Row-wise softmax with max subtraction.
  cache.alpha.resize(lanes, k_steps);
  for (Eigen::Index n = 0; n < lanes; ++n) {
    const double m = cache.scores.row(n).maxCoeff();
    Eigen::ArrayXd e = (cache.scores.row(n).array() - m).exp();
    cache.alpha.row(n) = (e / e.sum()).matrix();
  }
}

Eigen::MatrixXd AttentionLayer::forward_pool(const ParameterStore& store,
                                             const Eigen::VectorXd& params, const MatSeq& hs,
                                             Cache& cache) const {
  compute_alpha(store, params, hs, cache);
  const int k_steps = static_cast<int>(hs.size());
  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(hs.front().rows(), hidden_dim);
  for (int k = 0; k < k_steps; ++k) {
    pooled.array() += hs[k].array().colwise() * cache.alpha.col(k).array();
  }
  return pooled;
}

void AttentionLayer::backward_scores(const ParameterStore& store, const Eigen::VectorXd& params,
                                     const MatSeq& hs, const Cache& cache,
                                     const Eigen::MatrixXd& d_alpha, Eigen::VectorXd& grad,
                                     MatSeq& dh_seq) const {
  const auto wu = store.view(params, w_u);
  auto dwu = store.view(grad, w_u);
  auto dbu = store.view(grad, b_u);
  const int k_steps = static_cast<int>(hs.size());

  // Softmax backward per lane: du = alpha .* (d_alpha - sum(alpha .* d_alpha)).
  const Eigen::VectorXd dot = (cache.alpha.array() * d_alpha.array()).rowwise().sum();
  Eigen::MatrixXd du =
      (cache.alpha.array() * (d_alpha.array().colwise() - dot.array())).matrix();
  // tanh backward.
  du.array() *= 1.0 - cache.scores.array().square();

  for (int k = 0; k < k_steps; ++k) {
    dwu.col(0).noalias() += hs[k].transpose() * du.col(k);
    dh_seq[k].noalias() += du.col(k) * wu.col(0).transpose();
  }
  dbu(0, 0) += du.sum();
}

void AttentionLayer::backward_pool(const ParameterStore& store, const Eigen::VectorXd& params,
                                   const MatSeq& hs, const Cache& cache,
                                   const Eigen::MatrixXd& d_out, Eigen::VectorXd& grad,
                                   MatSeq& dh_seq) const {
  const int k_steps = static_cast<int>(hs.size());
  const Eigen::Index lanes = hs.front().rows();
  Eigen::MatrixXd d_alpha(lanes, k_steps);
  for (int k = 0; k < k_steps; ++k) {
    d_alpha.col(k) = (hs[k].array() * d_out.array()).rowwise().sum();
    dh_seq[k].array() += d_out.array().colwise() * cache.alpha.col(k).array();
  }
  backward_scores(store, params, hs, cache, d_alpha, grad, dh_seq);
}

MatSeq AttentionLayer::forward_reweight(const ParameterStore& store, const Eigen::VectorXd& params,
                                        const MatSeq& hs, Cache& cache) const {
  compute_alpha(store, params, hs, cache);
  const int k_steps = static_cast<int>(hs.size());
  MatSeq out(k_steps);
  // Scaled by K so uniform attention is the identity map on the sequence.
  const double gain = static_cast<double>(k_steps);
  for (int k = 0; k < k_steps; ++k) {
    out[k] = (hs[k].array().colwise() * (gain * cache.alpha.col(k).array())).matrix();
  }
  return out;
}

void AttentionLayer::backward_reweight(const ParameterStore& store, const Eigen::VectorXd& params,
                                       const MatSeq& hs, const Cache& cache, const MatSeq& d_out,
                                       Eigen::VectorXd& grad, MatSeq& dh_seq) const {
  const int k_steps = static_cast<int>(hs.size());
  const Eigen::Index lanes = hs.front().rows();
  const double gain = static_cast<double>(k_steps);
  Eigen::MatrixXd d_alpha(lanes, k_steps);
  for (int k = 0; k < k_steps; ++k) {
    d_alpha.col(k) = gain * (hs[k].array() * d_out[k].array()).rowwise().sum();
    dh_seq[k].array() += d_out[k].array().colwise() * (gain * cache.alpha.col(k).array());
  }
  backward_scores(store, params, hs, cache, d_alpha, grad, dh_seq);
}

// ---------------------------------------------------------------------------
// GraphConvLayer

void GraphConvLayer::declare(ParameterStore& store, const std::string& prefix, int input,
                             int output) {
  input_dim = input;
  output_dim = output;
  w_g = store.add(prefix + ".w_g", output, input, Init::kUniformFanIn, input);
}

Eigen::MatrixXd GraphConvLayer::forward(const ParameterStore& store, const Eigen::VectorXd& params,
                                        const Eigen::MatrixXd& ahat,
                                        const Eigen::MatrixXd& features) const {
  check_cols(features, input_dim, "graph convolution input");
  if (ahat.rows() != ahat.cols() || ahat.rows() != features.rows()) {
    throw ShapeMismatch("graph convolution: Ahat is " + std::to_string(ahat.rows()) + "x" +
                        std::to_string(ahat.cols()) + " but features have " +
                        std::to_string(features.rows()) + " rows");
  }
  const auto Wg = store.view(params, w_g);
  return ahat * features * Wg.transpose();
}

void GraphConvLayer::backward(const ParameterStore& store, const Eigen::VectorXd& params,
                              const Eigen::MatrixXd& ahat, const Eigen::MatrixXd& features,
                              const Eigen::MatrixXd& d_out, Eigen::VectorXd& grad,
                              Eigen::MatrixXd& d_features) const {
  const auto Wg = store.view(params, w_g);
  auto dWg = store.view(grad, w_g);
  dWg.noalias() += d_out.transpose() * (ahat * features);
  d_features.noalias() = ahat.transpose() * d_out * Wg;
}

// ---------------------------------------------------------------------------
// TemporalConvLayer

void TemporalConvLayer::declare(ParameterStore& store, const std::string& prefix, int input,
                                int output) {
  input_dim = input;
  output_dim = output;
  const int fan_in = input * kWidth;
  w0 = store.add(prefix + ".w0", output, input, Init::kUniformFanIn, fan_in);
  w1 = store.add(prefix + ".w1", output, input, Init::kUniformFanIn, fan_in);
  w2 = store.add(prefix + ".w2", output, input, Init::kUniformFanIn, fan_in);
  bias = store.add(prefix + ".b", output, 1, Init::kZero);
}

void TemporalConvLayer::forward(const ParameterStore& store, const Eigen::VectorXd& params,
                                const MatSeq& xs, Cache& cache) const {
  const int k_steps = static_cast<int>(xs.size());
  if (k_steps < kWidth) {
    throw ShapeMismatch("temporal convolution needs at least 3 steps, got " +
                        std::to_string(k_steps));
  }
  const auto W0 = store.view(params, w0);
  const auto W1 = store.view(params, w1);
  const auto W2 = store.view(params, w2);
  const auto b = store.view(params, bias);

  cache.y.resize(k_steps - kWidth + 1);
  for (int k = 0; k + kWidth <= k_steps; ++k) {
    Eigen::MatrixXd pre = xs[k] * W0.transpose() + xs[k + 1] * W1.transpose() +
                          xs[k + 2] * W2.transpose();
    pre.rowwise() += b.col(0).transpose();
    cache.y[k] = pre.array().tanh().matrix();
  }
}

void TemporalConvLayer::backward(const ParameterStore& store, const Eigen::VectorXd& params,
                                 const MatSeq& xs, const Cache& cache, const MatSeq& d_out,
                                 Eigen::VectorXd& grad, MatSeq& dx_seq) const {
  const int k_steps = static_cast<int>(xs.size());
  const auto W0 = store.view(params, w0);
  const auto W1 = store.view(params, w1);
  const auto W2 = store.view(params, w2);
  auto dW0 = store.view(grad, w0);
  auto dW1 = store.view(grad, w1);
  auto dW2 = store.view(grad, w2);
  auto db = store.view(grad, bias);

  dx_seq.assign(k_steps, Eigen::MatrixXd::Zero(xs.front().rows(), input_dim));
  for (int k = 0; k + kWidth <= k_steps; ++k) {
    if (k >= static_cast<int>(d_out.size()) || d_out[k].size() == 0) continue;
    const Eigen::MatrixXd dpre =
        (d_out[k].array() * (1.0 - cache.y[k].array().square())).matrix();
    dW0.noalias() += dpre.transpose() * xs[k];
    dW1.noalias() += dpre.transpose() * xs[k + 1];
    dW2.noalias() += dpre.transpose() * xs[k + 2];
    db.col(0) += dpre.colwise().sum().transpose();
    dx_seq[k].noalias() += dpre * W0;
    dx_seq[k + 1].noalias() += dpre * W1;
    dx_seq[k + 2].noalias() += dpre * W2;
  }
}

// ---------------------------------------------------------------------------
// DecoderLayer

void DecoderLayer::declare(ParameterStore& store, const std::string& prefix, int input_length) {
  if (input_length < 5) {
    throw ShapeMismatch("decoder input must have at least 5 features, got " +
                        std::to_string(input_length));
  }
  input_len = input_length;
  const int m = input_length - 4;
  conv_w = store.add(prefix + ".conv_w", 5, 1, Init::kUniformFanIn, 5);
  conv_b = store.add(prefix + ".conv_b", 1, 1, Init::kZero);
  ln_gain = store.add(prefix + ".ln_gain", m, 1, Init::kOne);
  ln_bias = store.add(prefix + ".ln_bias", m, 1, Init::kZero);
  w_dense = store.add(prefix + ".w_dense", 2, m, Init::kUniformFanIn, m);
  b_dense = store.add(prefix + ".b_dense", 2, 1, Init::kZero);
}

Eigen::Vector2d DecoderLayer::forward(const ParameterStore& store, const Eigen::VectorXd& params,
                                      const Eigen::VectorXd& input, Cache& cache) const {
  if (input.size() != input_len) {
    throw ShapeMismatch("decoder input of length " + std::to_string(input.size()) +
                        ", expected " + std::to_string(input_len));
  }
  const auto kernel = store.view(params, conv_w);
  const double kb = store.view(params, conv_b)(0, 0);
  const auto gain = store.view(params, ln_gain);
  const auto beta = store.view(params, ln_bias);
  const auto Wd = store.view(params, w_dense);
  const auto bd = store.view(params, b_dense);

  const int m = input_len - 4;
  cache.input = input;
  cache.conv.resize(m);
  for (int i = 0; i < m; ++i) {
    double acc = kb;
    for (int j = 0; j < 5; ++j) acc += kernel(j, 0) * input(i + j);
    cache.conv(i) = acc;
  }

  const double mu = cache.conv.mean();
  const double var = (cache.conv.array() - mu).square().mean();
  cache.inv_sigma = 1.0 / std::sqrt(var + kLayerNormEpsilon);
  cache.normalized = ((cache.conv.array() - mu) * cache.inv_sigma).matrix();
  cache.ln_out = (cache.normalized.array() * gain.col(0).array() + beta.col(0).array()).matrix();

  cache.logits = Wd * cache.ln_out + bd.col(0);
  const Eigen::VectorXd p = softmax(cache.logits);
  cache.probs = Eigen::Vector2d(p(0), p(1));
  return cache.probs;
}

void DecoderLayer::backward(const ParameterStore& store, const Eigen::VectorXd& params,
                            const Cache& cache, const Eigen::Vector2d& d_logits,
                            Eigen::VectorXd& grad, Eigen::VectorXd& d_input) const {
  const auto kernel = store.view(params, conv_w);
  const auto gain = store.view(params, ln_gain);
  const auto Wd = store.view(params, w_dense);
  auto d_kernel = store.view(grad, conv_w);
  auto d_kb = store.view(grad, conv_b);
  auto d_gain = store.view(grad, ln_gain);
  auto d_beta = store.view(grad, ln_bias);
  auto dWd = store.view(grad, w_dense);
  auto dbd = store.view(grad, b_dense);

  const int m = input_len - 4;

  dWd.noalias() += d_logits * cache.ln_out.transpose();
  dbd.col(0) += d_logits;
  const Eigen::VectorXd d_ln_out = Wd.transpose() * d_logits;

  d_gain.col(0) += (d_ln_out.array() * cache.normalized.array()).matrix();
  d_beta.col(0) += d_ln_out;
  const Eigen::VectorXd d_norm = (d_ln_out.array() * gain.col(0).array()).matrix();

  // Layer-norm backward with biased variance:
  // dy = inv_sigma * (d_norm - mean(d_norm) - normalized * mean(d_norm .* normalized)).
  const double mean_dnorm = d_norm.mean();
  const double mean_dnorm_norm = (d_norm.array() * cache.normalized.array()).mean();
  const Eigen::VectorXd d_conv =
      (cache.inv_sigma *
       (d_norm.array() - mean_dnorm - cache.normalized.array() * mean_dnorm_norm))
          .matrix();

  d_input = Eigen::VectorXd::Zero(input_len);
  for (int i = 0; i < m; ++i) {
    d_kb(0, 0) += d_conv(i);
    for (int j = 0; j < 5; ++j) {
      d_kernel(j, 0) += d_conv(i) * cache.input(i + j);
      d_input(i + j) += d_conv(i) * kernel(j, 0);
    }
  }
}

}  // namespace stfgacn::nn
