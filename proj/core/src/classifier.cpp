#include "stfgacn/classifier.hpp"

namespace stfgacn::experiment {

NeuralClassifier::NeuralClassifier(std::shared_ptr<const nn::Model> model, Eigen::VectorXd params,
                                   std::vector<int> lanes, Eigen::MatrixXd ahat)
    : model_(std::move(model)),
      params_(std::move(params)),
      lanes_(std::move(lanes)),
      ahat_(std::move(ahat)) {
  if (static_cast<int>(lanes_.size()) != model_->config().n_lanes) {
    throw ShapeMismatch("classifier lanes (" + std::to_string(lanes_.size()) +
                        ") do not match model lanes (" +
                        std::to_string(model_->config().n_lanes) + ")");
  }
}

Eigen::MatrixXd NeuralClassifier::restrict(const GraphSample& sample) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(lanes_.size()), sample.signals.cols());
  for (std::size_t i = 0; i < lanes_.size(); ++i) {
    if (lanes_[i] >= sample.signals.rows()) {
      throw ShapeMismatch("sample has " + std::to_string(sample.signals.rows()) +
                          " radar rows, classifier expects row " + std::to_string(lanes_[i]));
    }
    out.row(static_cast<Eigen::Index>(i)) = sample.signals.row(lanes_[i]);
  }
  return out;
}

Eigen::Vector2d NeuralClassifier::probabilities(const GraphSample& sample) const {
  nn::ForwardCache cache;
  return model_->forward(params_, restrict(sample), ahat_, cache);
}

int NeuralClassifier::predict(const GraphSample& sample) const {
  const Eigen::Vector2d probs = probabilities(sample);
  return probs(0) >= probs(1) ? 0 : 1;
}

MetricsReport evaluate(const Classifier& classifier, const std::vector<GraphSample>& samples) {
  if (samples.empty()) {
    throw TooFewSamples("evaluation over an empty sample set");
  }
  std::vector<int> labels, predictions;
  labels.reserve(samples.size());
  predictions.reserve(samples.size());
  for (const GraphSample& s : samples) {
    labels.push_back(s.label);
    predictions.push_back(classifier.predict(s));
  }
  return metrics_from_predictions(labels, predictions);
}

}  // namespace stfgacn::experiment
