#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <set>

#include "stfgacn/graph_dataset.hpp"
#include "stfgacn/rng.hpp"
#include "stfgacn/scenario.hpp"

using namespace stfgacn;
using namespace stfgacn::graph;

namespace {

sim::RadarConfig radar_at(int id, double x_m, double y_m, double fc, int subnet = 0) {
  sim::RadarConfig r;
  r.id = id;
  r.position = Eigen::Vector3d(x_m, y_m, 0.0);
  r.carrier_frequency_hz = fc;
  r.subnet_id = subnet;
  return r;
}

std::vector<GraphSample> make_samples(int count_per_class, int n = 2, int k = 4) {
  std::vector<GraphSample> samples;
  Prng rng(5);
  for (int label = 0; label < 2; ++label) {
    for (int i = 0; i < count_per_class; ++i) {
      GraphSample s;
      s.signals = Eigen::MatrixXd::Zero(n, k);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < k; ++c) s.signals(r, c) = rng.uniform(-5, 5);
      s.label = label;
      s.sample_id = label * count_per_class + i;
      samples.push_back(std::move(s));
    }
  }
  return samples;
}

}  // namespace

TEST(BuildAdjacency, SameFrequencyBranch) {
  const auto g = build_adjacency(
      {radar_at(0, 0, 0, 6.25e9), radar_at(1, 10000.0, 0, 6.25e9)});
  EXPECT_NEAR(g.adjacency(0, 1), 0.3 + 0.1, 1e-12);
  EXPECT_DOUBLE_EQ(g.adjacency(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(g.adjacency(1, 1), 0.0);
}

TEST(BuildAdjacency, DifferentFrequencyBranch) {
  const auto g =
      build_adjacency({radar_at(0, 0, 0, 6.25e9), radar_at(1, 2000.0, 0, 1.52e9, 1)});
  EXPECT_NEAR(g.adjacency(0, 1), 0.5, 1e-12);
}

TEST(BuildAdjacency, MatchesDenseOracleOnToyLayout) {
  const std::vector<sim::RadarConfig> radars = {radar_at(0, 0, 0, 6.25e9, 0),
                                                radar_at(1, 3000.0, 4000.0, 6.25e9, 0),
                                                radar_at(2, -6000.0, 8000.0, 1.52e9, 1)};
  const auto g = build_adjacency(radars);

  // Dense oracle, written independently.
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const double d_km = (radars[i].position - radars[j].position).norm() / 1000.0;
      const bool same = radars[i].carrier_frequency_hz == radars[j].carrier_frequency_hz;
      a(i, j) = (same ? 0.3 : 0.0) + 1.0 / d_km;
    }
  }
  Eigen::Vector3d deg = a.rowwise().sum();
  Eigen::Matrix3d ahat = Eigen::Matrix3d::Identity();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      ahat(i, j) += a(i, j) / std::sqrt(deg(i) * deg(j));
    }
  }
  EXPECT_LE((g.adjacency - a).norm(), 1e-12);
  EXPECT_LE((g.normalized_adjacency - ahat).norm(), 1e-12);
}

TEST(BuildAdjacency, SymmetricAndSpectrallyBounded) {
  const Scenario scenario = standard_scenario();
  const auto g = build_adjacency(scenario.radars);
  EXPECT_LE((g.adjacency - g.adjacency.transpose()).norm(), 1e-12);
  EXPECT_LE((g.normalized_adjacency - g.normalized_adjacency.transpose()).norm(), 1e-12);

  // Eigenvalues of D^-1/2 A D^-1/2 lie in [-1, 1].
  const Eigen::MatrixXd sym =
      g.normalized_adjacency - Eigen::MatrixXd::Identity(g.adjacency.rows(), g.adjacency.cols());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  EXPECT_GE(solver.eigenvalues().minCoeff(), -1.0 - 1e-12);
  EXPECT_LE(solver.eigenvalues().maxCoeff(), 1.0 + 1e-12);

  // Two subnets of five and four radars.
  ASSERT_EQ(g.subnets.size(), 2u);
  EXPECT_EQ(g.subnets[0].size(), 5u);
  EXPECT_EQ(g.subnets[1].size(), 4u);
}

TEST(BuildAdjacency, RejectsDegenerateLayouts) {
  EXPECT_THROW(build_adjacency({radar_at(0, 0, 0, 1e9)}), InvalidGeometry);
  EXPECT_THROW(build_adjacency({radar_at(0, 5, 5, 1e9), radar_at(1, 5, 5, 1e9)}),
               InvalidGeometry);
}

TEST(NormalizedAdjacency, ZeroDegreeConvention) {
  const Eigen::MatrixXd ahat = normalized_adjacency(Eigen::MatrixXd::Zero(4, 4));
  EXPECT_LE((ahat - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-15);
}

TEST(MinMaxNormalize, AffineEndpoints) {
  std::vector<GraphSample> samples(1);
  samples[0].signals = Eigen::MatrixXd(1, 3);
  samples[0].signals << 0.0, 5.0, 10.0;
  const auto stats = min_max_normalize(samples);
  EXPECT_DOUBLE_EQ(stats.min_dbsm, 0.0);
  EXPECT_DOUBLE_EQ(stats.max_dbsm, 10.0);
  EXPECT_DOUBLE_EQ(samples[0].signals(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(samples[0].signals(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(samples[0].signals(0, 2), 1.0);
}

TEST(MinMaxNormalize, StoredStatsExtrapolateWithoutClipping) {
  NormalizationStats stats{0.0, 10.0};
  std::vector<GraphSample> samples(1);
  samples[0].signals = Eigen::MatrixXd(1, 2);
  samples[0].signals << 12.0, -2.0;
  min_max_normalize(samples, stats);
  EXPECT_GT(samples[0].signals(0, 0), 1.0);
  EXPECT_LT(samples[0].signals(0, 1), 0.0);
}

TEST(MinMaxNormalize, RoundTripsThroughDenormalize) {
  std::vector<GraphSample> samples = make_samples(3);
  std::vector<GraphSample> original = samples;
  const auto stats = min_max_normalize(samples);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (Eigen::Index r = 0; r < samples[i].signals.rows(); ++r) {
      for (Eigen::Index c = 0; c < samples[i].signals.cols(); ++c) {
        EXPECT_NEAR(denormalize(samples[i].signals(r, c), stats), original[i].signals(r, c),
                    1e-12);
      }
    }
  }
}

TEST(MinMaxNormalize, ConstantSignalThrows) {
  std::vector<GraphSample> samples(1);
  samples[0].signals = Eigen::MatrixXd::Constant(2, 4, 3.25);
  EXPECT_THROW(min_max_normalize(samples), ConstantSignal);
}

TEST(SplitDataset, FullScaleSizes) {
  const auto split = split_dataset(make_samples(1000), 3);
  EXPECT_EQ(split.train.size(), 1400u);
  EXPECT_EQ(split.test.size(), 400u);
  EXPECT_EQ(split.validation.size(), 200u);
}

TEST(SplitDataset, TenSamplesGiveExactRatio) {
  const auto split = split_dataset(make_samples(5), 3);
  EXPECT_EQ(split.train.size(), 7u);
  EXPECT_EQ(split.test.size(), 2u);
  EXPECT_EQ(split.validation.size(), 1u);
}

TEST(SplitDataset, LabelBalanceWithinOne) {
  const auto split = split_dataset(make_samples(137), 11);
  for (const auto* part : {&split.train, &split.test, &split.validation}) {
    long zeros = 0, ones = 0;
    for (const auto& s : *part) {
      (s.label == 0 ? zeros : ones)++;
    }
    EXPECT_LE(std::abs(zeros - ones), 1);
  }
}

TEST(SplitDataset, DisjointAndDeterministic) {
  const auto a = split_dataset(make_samples(20), 7);
  const auto b = split_dataset(make_samples(20), 7);
  std::set<long> seen;
  for (const auto* part : {&a.train, &a.test, &a.validation}) {
    for (const auto& s : *part) {
      EXPECT_TRUE(seen.insert(s.sample_id).second) << "duplicate id " << s.sample_id;
    }
  }
  EXPECT_EQ(seen.size(), 40u);
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    EXPECT_EQ(a.train[i].sample_id, b.train[i].sample_id);
  }
  const auto c = split_dataset(make_samples(20), 8);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.train.size(); ++i) {
    if (a.train[i].sample_id != c.train[i].sample_id) any_difference = true;
  }
  EXPECT_TRUE(any_difference);
}

TEST(SplitDataset, TooFewSamplesThrows) {
  EXPECT_THROW(split_dataset(make_samples(4), 1), TooFewSamples);
}

TEST(NormalizeSplit, FitsOnTrainOnly) {
  auto samples = make_samples(10);
  auto split = split_dataset(samples, 3);
  // Push one test sample outside the train range; its normalized value must
  // extrapolate beyond [0, 1] rather than clip.
  split.test[0].signals(0, 0) = 1000.0;
  normalize_split(split);
  ASSERT_TRUE(split.normalization_stats.has_value());
  double train_max = -1e300;
  for (const auto& s : split.train) train_max = std::max(train_max, s.signals.maxCoeff());
  EXPECT_LE(train_max, 1.0 + 1e-12);
  EXPECT_GT(split.test[0].signals(0, 0), 1.0);
}
