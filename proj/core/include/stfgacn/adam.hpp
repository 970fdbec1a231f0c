#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "stfgacn/common.hpp"

namespace stfgacn::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias correction over a flat parameter vector.
class AdamState {
 public:
  AdamState(Eigen::Index size, AdamConfig config = {});

  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grads);

  void set_learning_rate(double lr) { config_.learning_rate = lr; }
  double learning_rate() const { return config_.learning_rate; }
  std::int64_t step_count() const { return step_count_; }
  const Eigen::VectorXd& first_moment() const { return m_; }
  const Eigen::VectorXd& second_moment() const { return v_; }

 private:
  AdamConfig config_;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
  std::int64_t step_count_ = 0;
};

}  // namespace stfgacn::nn
