#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <limits>
#include <vector>

#include "stfgacn/graph_dataset.hpp"
#include "stfgacn/nn_model.hpp"

namespace stfgacn::experiment {

struct TrainConfig {
  int batch_size = 5;
  double initial_lr = 1e-3;
  double step_decay = 0.5;
  int decay_period_epochs = 30;  // learning rate halves every period
  int max_epochs = 100;
  int patience = 10;  // non-improving validation epochs before stopping
  std::uint64_t seed = 0;
};

struct EpochLog {
  int epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_acc = 0.0;
  double lr = 0.0;
};

struct TrainResult {
  Eigen::VectorXd best_params;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  double best_val_loss = std::numeric_limits<double>::infinity();
};

/// Stops after `patience` consecutive epochs without a strict improvement.
class EarlyStopper {
 public:
  explicit EarlyStopper(int patience) : patience_(patience) {}

  /// Observe one epoch's validation loss; returns true when training should
  /// stop after this epoch.
  bool observe(double val_loss) {
    if (val_loss < best_) {
      best_ = val_loss;
      bad_streak_ = 0;
      improved_ = true;
    } else {
      ++bad_streak_;
      improved_ = false;
    }
    return bad_streak_ >= patience_;
  }

  bool improved_last() const { return improved_; }
  double best() const { return best_; }

 private:
  int patience_;
  int bad_streak_ = 0;
  bool improved_ = false;
  double best_ = std::numeric_limits<double>::infinity();
};

/// Mini-batch Adam with per-epoch validation, step-decayed learning rate and
/// early stopping; returns the best-validation parameters. Signals are
/// already restricted to the model's lanes.
TrainResult train(const nn::Model& model, const std::vector<Eigen::MatrixXd>& train_signals,
                  const std::vector<int>& train_labels,
                  const std::vector<Eigen::MatrixXd>& val_signals,
                  const std::vector<int>& val_labels, const Eigen::MatrixXd& ahat,
                  const TrainConfig& config);

}  // namespace stfgacn::experiment
