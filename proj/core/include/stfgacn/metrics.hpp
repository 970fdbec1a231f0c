#pragma once

#include <vector>

namespace stfgacn::experiment {

/// Confusion counts and the four derived ratios. Class 0 (the first aircraft
/// type) is the positive class. Undefined ratios (zero denominator) carry a
/// false *_defined flag and a NaN value.
struct MetricsReport {
  long tp = 0;
  long tn = 0;
  long fp = 0;
  long fn = 0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool precision_defined = true;
  bool recall_defined = true;
  bool f1_defined = true;

  long total() const { return tp + tn + fp + fn; }
};

MetricsReport metrics_from_counts(long tp, long tn, long fp, long fn);

/// Counts from parallel label/prediction lists.
MetricsReport metrics_from_predictions(const std::vector<int>& labels,
                                       const std::vector<int>& predictions);

}  // namespace stfgacn::experiment
