#include "stfgacn/nn_params.hpp"

#include <cmath>

#include "stfgacn/rng.hpp"

namespace stfgacn::nn {

int ParameterStore::add(std::string name, int rows, int cols, Init init, int fan_in) {
  if (finalized_) {
    throw Error("ParameterStore::add after finalize");
  }
  if (rows <= 0 || cols <= 0) {
    throw ShapeMismatch("parameter block '" + name + "' has non-positive shape");
  }
  ParamBlock block;
  block.name = std::move(name);
  block.rows = rows;
  block.cols = cols;
  block.offset = total_;
  block.init = init;
  block.fan_in = fan_in;
  total_ += rows * cols;
  blocks_.push_back(std::move(block));
  return static_cast<int>(blocks_.size()) - 1;
}

void ParameterStore::finalize() {
  values_ = Eigen::VectorXd::Zero(total_);
  finalized_ = true;
}

Eigen::Map<Eigen::MatrixXd> ParameterStore::view(Eigen::VectorXd& storage, int id) const {
  const ParamBlock& b = block(id);
  if (storage.size() != total_) {
    throw ShapeMismatch("flat vector of size " + std::to_string(storage.size()) +
                        " does not match parameter layout of size " + std::to_string(total_));
  }
  return {storage.data() + b.offset, b.rows, b.cols};
}

Eigen::Map<const Eigen::MatrixXd> ParameterStore::view(const Eigen::VectorXd& storage,
                                                       int id) const {
  const ParamBlock& b = block(id);
  if (storage.size() != total_) {
    throw ShapeMismatch("flat vector of size " + std::to_string(storage.size()) +
                        " does not match parameter layout of size " + std::to_string(total_));
  }
  return {storage.data() + b.offset, b.rows, b.cols};
}

Eigen::VectorXd ParameterStore::make_initial(std::uint64_t seed) const {
  if (!finalized_) {
    throw Error("ParameterStore::make_initial before finalize");
  }
  Eigen::VectorXd out(total_);
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const ParamBlock& b = blocks_[i];
    double* data = out.data() + b.offset;
    const int count = b.rows * b.cols;
    switch (b.init) {
      case Init::kZero:
        for (int k = 0; k < count; ++k) data[k] = 0.0;
        break;
      case Init::kOne:
        for (int k = 0; k < count; ++k) data[k] = 1.0;
        break;
      case Init::kUniformFanIn: {
        Prng rng(derive_seed(seed, {0x1417ULL, i}));
        const double bound = 1.0 / std::sqrt(static_cast<double>(std::max(1, b.fan_in)));
        for (int k = 0; k < count; ++k) data[k] = rng.uniform(-bound, bound);
        break;
      }
    }
  }
  return out;
}

void ParameterStore::initialize(std::uint64_t seed) {
  values_ = make_initial(seed);
}

}  // namespace stfgacn::nn
