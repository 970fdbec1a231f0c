#include <gtest/gtest.h>

#include <cmath>

#include "stfgacn/graph_dataset.hpp"
#include "stfgacn/nn_layers.hpp"
#include "stfgacn/rng.hpp"

using namespace stfgacn;
using namespace stfgacn::nn;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Prng& rng, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

double sigmoid_scalar(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TEST(GruStep, ZeroParametersHalveThePreviousState) {
  ParameterStore store;
  GruLayer gru;
  gru.declare(store, "gru", 2, 3);
  store.finalize();
  const Eigen::VectorXd params = Eigen::VectorXd::Zero(store.size());

  Prng rng(3);
  const Eigen::MatrixXd x = random_matrix(1, 2, rng);
  const Eigen::MatrixXd h_prev = random_matrix(1, 3, rng);
  GruLayer::StepCache cache;
  const Eigen::MatrixXd h = gru.step(store, params, x, h_prev, &cache);
  // sigmoid(0) = 0.5, tanh(0) = 0 -> h = 0.5 * h_prev.
  EXPECT_LE((h - 0.5 * h_prev).norm(), 1e-15);
  EXPECT_LE((cache.s.array() - 0.5).matrix().norm(), 1e-15);
  EXPECT_LE((cache.z.array() - 0.5).matrix().norm(), 1e-15);
  EXPECT_LE(cache.c.norm(), 1e-15);
}

TEST(GruStep, ZeroStateZeroParamsIsFixedPoint) {
  ParameterStore store;
  GruLayer gru;
  gru.declare(store, "gru", 1, 4);
  store.finalize();
  const Eigen::VectorXd params = Eigen::VectorXd::Zero(store.size());
  const Eigen::MatrixXd x = Eigen::MatrixXd::Constant(1, 1, 0.37);
  const Eigen::MatrixXd h = gru.step(store, params, x, Eigen::MatrixXd::Zero(1, 4));
  EXPECT_LE(h.norm(), 1e-15);
}

TEST(GruStep, MatchesScalarLoopOracle) {
  Prng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int in_dim = 1 + static_cast<int>(rng.uniform_below(4));
    const int hidden = 1 + static_cast<int>(rng.uniform_below(5));
    ParameterStore store;
    GruLayer gru;
    gru.declare(store, "gru", in_dim, hidden);
    store.finalize();
    Eigen::VectorXd params(store.size());
    for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);

    const Eigen::MatrixXd x = random_matrix(1, in_dim, rng);
    const Eigen::MatrixXd h_prev = random_matrix(1, hidden, rng);
    const Eigen::MatrixXd h = gru.step(store, params, x, h_prev);

    const auto Ws = store.view(params, gru.w_s);
    const auto Vs = store.view(params, gru.v_s);
    const auto bs = store.view(params, gru.b_s);
    const auto Wz = store.view(params, gru.w_z);
    const auto Vz = store.view(params, gru.v_z);
    const auto bz = store.view(params, gru.b_z);
    const auto Wc = store.view(params, gru.w_c);
    const auto Vc = store.view(params, gru.v_c);
    const auto bc = store.view(params, gru.b_c);

    // Straight-line scalar re-implementation.
    for (int i = 0; i < hidden; ++i) {
      double pre_s = bs(i, 0), pre_z = bz(i, 0);
      for (int j = 0; j < in_dim; ++j) {
        pre_s += Ws(i, j) * x(0, j);
        pre_z += Wz(i, j) * x(0, j);
      }
      for (int j = 0; j < hidden; ++j) {
        pre_s += Vs(i, j) * h_prev(0, j);
        pre_z += Vz(i, j) * h_prev(0, j);
      }
      const double s = sigmoid_scalar(pre_s);
      double pre_c = 0.0;
      for (int j = 0; j < in_dim; ++j) pre_c += Wc(i, j) * x(0, j);
      for (int j = 0; j < hidden; ++j) {
        double pre_z_j = bz(j, 0);
        for (int m = 0; m < in_dim; ++m) pre_z_j += Wz(j, m) * x(0, m);
        for (int m = 0; m < hidden; ++m) pre_z_j += Vz(j, m) * h_prev(0, m);
        const double z_j = sigmoid_scalar(pre_z_j);
        pre_c += Vc(i, j) * (h_prev(0, j) * z_j + bc(j, 0));
      }
      const double c = std::tanh(pre_c);
      const double expected = s * c + h_prev(0, i) * (1.0 - s);
      EXPECT_NEAR(h(0, i), expected, 1e-12) << "trial " << trial << " unit " << i;
    }
  }
}

TEST(AttentionPool, UniformWeightsForIdenticalStates) {
  ParameterStore store;
  AttentionLayer att;
  att.declare(store, "att", 3);
  store.finalize();
  Prng rng(5);
  Eigen::VectorXd params(store.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);

  const int k_steps = 7;
  const Eigen::MatrixXd h = random_matrix(2, 3, rng);
  MatSeq hs(k_steps, h);
  AttentionLayer::Cache cache;
  const Eigen::MatrixXd pooled = att.forward_pool(store, params, hs, cache);
  EXPECT_LE((cache.alpha.array() - 1.0 / k_steps).matrix().norm(), 1e-12);
  EXPECT_LE((pooled - h).norm(), 1e-12);
}

TEST(AttentionPool, SingletonSequence) {
  ParameterStore store;
  AttentionLayer att;
  att.declare(store, "att", 4);
  store.finalize();
  Prng rng(6);
  Eigen::VectorXd params(store.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);
  const MatSeq hs = {random_matrix(1, 4, rng)};
  AttentionLayer::Cache cache;
  const Eigen::MatrixXd pooled = att.forward_pool(store, params, hs, cache);
  EXPECT_DOUBLE_EQ(cache.alpha(0, 0), 1.0);
  EXPECT_LE((pooled - hs[0]).norm(), 1e-15);
}

TEST(AttentionPool, MatchesSoftmaxOracle) {
  Prng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const int hidden = 1 + static_cast<int>(rng.uniform_below(5));
    const int k_steps = 1 + static_cast<int>(rng.uniform_below(8));
    ParameterStore store;
    AttentionLayer att;
    att.declare(store, "att", hidden);
    store.finalize();
    Eigen::VectorXd params(store.size());
    for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-2, 2);

    MatSeq hs;
    for (int k = 0; k < k_steps; ++k) hs.push_back(random_matrix(1, hidden, rng));
    AttentionLayer::Cache cache;
    att.forward_pool(store, params, hs, cache);

    const auto wu = store.view(params, att.w_u);
    const double bu = store.view(params, att.b_u)(0, 0);
    // Direct evaluation: scores, stabilized softmax.
    std::vector<double> u(k_steps);
    double max_u = -1e300;
    for (int k = 0; k < k_steps; ++k) {
      double dot = bu;
      for (int j = 0; j < hidden; ++j) dot += wu(j, 0) * hs[k](0, j);
      u[k] = std::tanh(dot);
      max_u = std::max(max_u, u[k]);
    }
    double denom = 0.0;
    for (int k = 0; k < k_steps; ++k) denom += std::exp(u[k] - max_u);
    double alpha_sum = 0.0;
    for (int k = 0; k < k_steps; ++k) {
      const double alpha = std::exp(u[k] - max_u) / denom;
      EXPECT_NEAR(cache.alpha(0, k), alpha, 1e-12);
      EXPECT_GE(cache.alpha(0, k), 0.0);
      alpha_sum += cache.alpha(0, k);
    }
    EXPECT_NEAR(alpha_sum, 1.0, 1e-9);
  }
}

TEST(Softmax, ShiftInvariance) {
  Prng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd scores = random_matrix(6, 1, rng, 3.0).col(0);
    const Eigen::VectorXd base = softmax(scores);
    const Eigen::VectorXd shifted = softmax(scores.array() + 17.5);
    EXPECT_LE((base - shifted).norm(), 1e-12);
    EXPECT_NEAR(base.sum(), 1.0, 1e-12);
  }
}

TEST(AttentionReweight, UniformAttentionIsIdentity) {
  ParameterStore store;
  AttentionLayer att;
  att.declare(store, "att", 3);
  store.finalize();
  const Eigen::VectorXd params = Eigen::VectorXd::Zero(store.size());
  Prng rng(8);
  MatSeq hs;
  for (int k = 0; k < 5; ++k) hs.push_back(random_matrix(2, 3, rng));
  AttentionLayer::Cache cache;
  const MatSeq out = att.forward_reweight(store, params, hs, cache);
  // Zero scores give uniform alpha = 1/K; the K gain restores the input.
  for (int k = 0; k < 5; ++k) {
    EXPECT_LE((out[k] - hs[k]).norm(), 1e-12);
  }
}

TEST(GraphConvolve, IdentityPassThrough) {
  ParameterStore store;
  GraphConvLayer gcn;
  gcn.declare(store, "gcn", 3, 3);
  store.finalize();
  Eigen::VectorXd params = Eigen::VectorXd::Zero(store.size());
  auto wg = store.view(params, gcn.w_g);
  wg.setIdentity();

  // A = 0 so Ahat = I by the zero-degree convention.
  const Eigen::MatrixXd ahat = graph::normalized_adjacency(Eigen::MatrixXd::Zero(4, 4));
  Prng rng(9);
  const Eigen::MatrixXd features = random_matrix(4, 3, rng);
  EXPECT_LE((gcn.forward(store, params, ahat, features) - features).norm(), 1e-15);
}

TEST(GraphConvolve, MatchesDenseOracle) {
  Prng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_below(3));
    const int f_in = 1 + static_cast<int>(rng.uniform_below(4));
    const int f_out = 1 + static_cast<int>(rng.uniform_below(4));
    ParameterStore store;
    GraphConvLayer gcn;
    gcn.declare(store, "gcn", f_in, f_out);
    store.finalize();
    Eigen::VectorXd params(store.size());
    for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);
    const auto wg = store.view(params, gcn.w_g);

    const Eigen::MatrixXd ahat = random_matrix(n, n, rng);
    const Eigen::MatrixXd features = random_matrix(n, f_in, rng);
    const Eigen::MatrixXd got = gcn.forward(store, params, ahat, features);

    for (int i = 0; i < n; ++i) {
      for (int o = 0; o < f_out; ++o) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
          for (int f = 0; f < f_in; ++f) {
            acc += ahat(i, j) * features(j, f) * wg(o, f);
          }
        }
        EXPECT_NEAR(got(i, o), acc, 1e-12);
      }
    }
  }
}

TEST(GraphConvolve, PermutationEquivariant) {
  ParameterStore store;
  GraphConvLayer gcn;
  gcn.declare(store, "gcn", 3, 2);
  store.finalize();
  Prng rng(10);
  Eigen::VectorXd params(store.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);

  const int n = 4;
  Eigen::MatrixXd a = random_matrix(n, n, rng).cwiseAbs();
  a.diagonal().setZero();
  const Eigen::MatrixXd ahat = graph::normalized_adjacency(0.5 * (a + a.transpose()));
  const Eigen::MatrixXd features = random_matrix(n, 3, rng);

  Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
  perm.setIdentity();
  std::swap(perm.indices()(0), perm.indices()(2));
  const Eigen::MatrixXd p = perm.toDenseMatrix().cast<double>();

  const Eigen::MatrixXd base = gcn.forward(store, params, ahat, features);
  const Eigen::MatrixXd permuted =
      gcn.forward(store, params, p * ahat * p.transpose(), p * features);
  EXPECT_LE((permuted - p * base).norm(), 1e-12);
}

TEST(GraphConvolve, Linearity) {
  ParameterStore store;
  GraphConvLayer gcn;
  gcn.declare(store, "gcn", 3, 3);
  store.finalize();
  Prng rng(11);
  Eigen::VectorXd params(store.size());
  for (Eigen::Index i = 0; i < params.size(); ++i) params(i) = rng.uniform(-1, 1);
  const Eigen::MatrixXd ahat = random_matrix(4, 4, rng);
  const Eigen::MatrixXd o1 = random_matrix(4, 3, rng);
  const Eigen::MatrixXd o2 = random_matrix(4, 3, rng);
  const double alpha = 1.7, beta = -0.3;
  const Eigen::MatrixXd lhs = gcn.forward(store, params, ahat, alpha * o1 + beta * o2);
  const Eigen::MatrixXd rhs =
      alpha * gcn.forward(store, params, ahat, o1) + beta * gcn.forward(store, params, ahat, o2);
  EXPECT_LE((lhs - rhs).norm(), 1e-10);
}

TEST(Decoder, ZeroDenseWeightsGiveUniformProbabilities) {
  ParameterStore store;
  DecoderLayer decoder;
  decoder.declare(store, "decoder", 8);
  store.finalize();
  Prng rng(12);
  Eigen::VectorXd params = store.make_initial(3);
  store.view(params, decoder.w_dense).setZero();
  store.view(params, decoder.b_dense).setZero();
  DecoderLayer::Cache cache;
  const Eigen::Vector2d probs =
      decoder.forward(store, params, random_matrix(8, 1, rng).col(0), cache);
  EXPECT_DOUBLE_EQ(probs(0), 0.5);
  EXPECT_DOUBLE_EQ(probs(1), 0.5);
}

TEST(Decoder, LayerNormOfConstantVectorIsZero) {
  ParameterStore store;
  DecoderLayer decoder;
  decoder.declare(store, "decoder", 9);
  store.finalize();
  Eigen::VectorXd params = store.make_initial(4);
  // Zero kernel and a constant conv bias make the conv output constant; unit
  // gain and zero bias then drive the normalized vector to zero.
  store.view(params, decoder.conv_w).setZero();
  store.view(params, decoder.conv_b).setConstant(2.5);
  store.view(params, decoder.ln_gain).setOnes();
  store.view(params, decoder.ln_bias).setZero();
  DecoderLayer::Cache cache;
  decoder.forward(store, params, Eigen::VectorXd::Constant(9, 1.3), cache);
  EXPECT_LE(cache.ln_out.norm(), 1e-12);
}

TEST(Decoder, ProbabilitiesSumToOne) {
  ParameterStore store;
  DecoderLayer decoder;
  decoder.declare(store, "decoder", 11);
  store.finalize();
  Prng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd params = store.make_initial(trial);
    DecoderLayer::Cache cache;
    const Eigen::Vector2d probs =
        decoder.forward(store, params, random_matrix(11, 1, rng).col(0) * 3.0, cache);
    EXPECT_NEAR(probs.sum(), 1.0, 1e-12);
    EXPECT_GT(probs(0), 0.0);
    EXPECT_GT(probs(1), 0.0);
  }
}
