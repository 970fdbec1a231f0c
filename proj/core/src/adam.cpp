#include "stfgacn/adam.hpp"

#include <cmath>

namespace stfgacn::nn {

AdamState::AdamState(Eigen::Index size, AdamConfig config)
    : config_(config), m_(Eigen::VectorXd::Zero(size)), v_(Eigen::VectorXd::Zero(size)) {}

void AdamState::step(Eigen::VectorXd& params, const Eigen::VectorXd& grads) {
  if (params.size() != m_.size() || grads.size() != m_.size()) {
    throw ShapeMismatch("adam state of size " + std::to_string(m_.size()) +
                        " applied to params/grads of size " + std::to_string(params.size()) +
                        "/" + std::to_string(grads.size()));
  }
  ++step_count_;
  m_ = config_.beta1 * m_ + (1.0 - config_.beta1) * grads;
  v_ = config_.beta2 * v_ + (1.0 - config_.beta2) * grads.cwiseProduct(grads);
  const double m_corr = 1.0 - std::pow(config_.beta1, static_cast<double>(step_count_));
  const double v_corr = 1.0 - std::pow(config_.beta2, static_cast<double>(step_count_));
  params.array() -= config_.learning_rate * (m_.array() / m_corr) /
                    ((v_.array() / v_corr).sqrt() + config_.epsilon);
}

}  // namespace stfgacn::nn
