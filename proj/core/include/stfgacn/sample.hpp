#pragma once

#include <Eigen/Core>
#include <optional>

namespace stfgacn {

/// One synchronized bundle of RCS signals across the radar network: the unit
/// of classification. Row n holds radar n's time series. Values are raw dBsm
/// as generated; after min-max normalization they live in [0, 1].
struct GraphSample {
  Eigen::MatrixXd signals;  // N x K
  int label = 0;            // {0, 1}
  std::optional<double> snr_db;  // nullopt = clean
  long sample_id = 0;
};

}  // namespace stfgacn
