#pragma once

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "stfgacn/baselines.hpp"
#include "stfgacn/metrics.hpp"
#include "stfgacn/nn_model.hpp"
#include "stfgacn/sample.hpp"

namespace stfgacn::experiment {

/// A trained decision function over graph samples. Prediction ties resolve
/// to class 0 everywhere.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int predict(const GraphSample& sample) const = 0;
};

/// Neural model bound to the lane subset and (sub)graph it was trained on.
class NeuralClassifier : public Classifier {
 public:
  NeuralClassifier(std::shared_ptr<const nn::Model> model, Eigen::VectorXd params,
                   std::vector<int> lanes, Eigen::MatrixXd ahat);

  int predict(const GraphSample& sample) const override;
  Eigen::Vector2d probabilities(const GraphSample& sample) const;
  Eigen::MatrixXd restrict(const GraphSample& sample) const;

  const nn::Model& model() const { return *model_; }
  const Eigen::VectorXd& parameters() const { return params_; }
  const std::vector<int>& lanes() const { return lanes_; }
  const Eigen::MatrixXd& ahat() const { return ahat_; }

 private:
  std::shared_ptr<const nn::Model> model_;
  Eigen::VectorXd params_;
  std::vector<int> lanes_;
  Eigen::MatrixXd ahat_;
};

class FftBaselineClassifier : public Classifier {
 public:
  FftBaselineClassifier(FftTemplates templates, int radar_row)
      : templates_(templates), radar_row_(radar_row) {}

  int predict(const GraphSample& sample) const override {
    return fft_classify(sample.signals.row(radar_row_).transpose(), templates_);
  }

  const FftTemplates& templates() const { return templates_; }

 private:
  FftTemplates templates_;
  int radar_row_;
};

class VotingClassifier : public Classifier {
 public:
  explicit VotingClassifier(std::vector<std::unique_ptr<Classifier>> members)
      : members_(std::move(members)) {}

  int predict(const GraphSample& sample) const override {
    std::vector<int> votes;
    votes.reserve(members_.size());
    for (const auto& member : members_) {
      votes.push_back(member->predict(sample));
    }
    return voting_ensemble(votes);
  }

  std::size_t size() const { return members_.size(); }

 private:
  std::vector<std::unique_ptr<Classifier>> members_;
};

/// Confusion counts and ratios of a classifier over a sample set.
MetricsReport evaluate(const Classifier& classifier, const std::vector<GraphSample>& samples);

}  // namespace stfgacn::experiment
