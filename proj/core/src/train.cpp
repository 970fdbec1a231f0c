#include "stfgacn/train.hpp"

#include <cmath>
#include <numeric>

#include "stfgacn/adam.hpp"
#include "stfgacn/rng.hpp"

namespace stfgacn::experiment {

namespace {

double validation_accuracy(const nn::Model& model, const Eigen::VectorXd& params,
                           const std::vector<Eigen::MatrixXd>& signals,
                           const std::vector<int>& labels, const Eigen::MatrixXd& ahat) {
  if (signals.empty()) return 0.0;
  long correct = 0;
  nn::ForwardCache cache;
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const Eigen::Vector2d probs = model.forward(params, signals[i], ahat, cache);
    const int predicted = probs(0) >= probs(1) ? 0 : 1;
    if (predicted == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(signals.size());
}

}  // namespace

TrainResult train(const nn::Model& model, const std::vector<Eigen::MatrixXd>& train_signals,
                  const std::vector<int>& train_labels,
                  const std::vector<Eigen::MatrixXd>& val_signals,
                  const std::vector<int>& val_labels, const Eigen::MatrixXd& ahat,
                  const TrainConfig& config) {
  if (train_signals.empty()) {
    throw TooFewSamples("training requires a nonempty train split");
  }
  if (train_signals.size() != train_labels.size() || val_signals.size() != val_labels.size()) {
    throw ShapeMismatch("signals and labels differ in length");
  }
  if (config.batch_size < 1 || config.step_decay <= 0.0 || config.step_decay > 1.0) {
    throw ConfigError("invalid training configuration");
  }

  Eigen::VectorXd params = model.store().make_initial(derive_seed(config.seed, {0x1217ULL}));
  nn::AdamState adam(params.size(), {.learning_rate = config.initial_lr});

  std::vector<nn::BatchItem> val_batch;
  for (std::size_t i = 0; i < val_signals.size(); ++i) {
    val_batch.push_back({&val_signals[i], val_labels[i]});
  }

  TrainResult result;
  result.best_params = params;
  EarlyStopper stopper(config.patience);

  std::vector<std::size_t> order(train_signals.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const double lr = config.initial_lr *
                      std::pow(config.step_decay, (epoch - 1) / config.decay_period_epochs);
    adam.set_learning_rate(lr);

    Prng shuffle_rng(derive_seed(config.seed, {0x0e90c4ULL, static_cast<std::uint64_t>(epoch)}));
    shuffle(order, shuffle_rng);

    double epoch_loss = 0.0;
    std::size_t seen = 0;
    Eigen::VectorXd grads;
    for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
      const std::size_t end = std::min(order.size(), start + config.batch_size);
      std::vector<nn::BatchItem> batch;
      batch.reserve(end - start);
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back({&train_signals[order[i]], train_labels[order[i]]});
      }
      double loss;
      try {
        loss = model.loss_and_gradients(params, batch, ahat, grads);
      } catch (const NonFiniteLoss& e) {
        throw NonFiniteLoss(std::string(e.what()) + " (epoch " + std::to_string(epoch) +
                            ", batch starting at sample " + std::to_string(start) + ")");
      }
      adam.step(params, grads);
      epoch_loss += loss * static_cast<double>(batch.size());
      seen += batch.size();
    }
    epoch_loss /= static_cast<double>(seen);

    // Empty validation sets fall back to the train loss for stopping.
    const double val_loss =
        val_batch.empty() ? epoch_loss : model.loss_only(params, val_batch, ahat);
    const double val_acc = validation_accuracy(model, params, val_signals, val_labels, ahat);
    result.log.push_back({epoch, epoch_loss, val_loss, val_acc, lr});

    const bool stop = stopper.observe(val_loss);
    if (stopper.improved_last()) {
      result.best_params = params;
      result.best_epoch = epoch;
      result.best_val_loss = val_loss;
    }
    if (stop) break;
  }
  return result;
}

}  // namespace stfgacn::experiment
