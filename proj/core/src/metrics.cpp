#include "stfgacn/metrics.hpp"

#include <limits>

#include "stfgacn/common.hpp"

namespace stfgacn::experiment {

MetricsReport metrics_from_counts(long tp, long tn, long fp, long fn) {
  MetricsReport r;
  r.tp = tp;
  r.tn = tn;
  r.fp = fp;
  r.fn = fn;
  const long total = tp + tn + fp + fn;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.accuracy = total > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total) : nan;

  r.precision_defined = (tp + fp) > 0;
  r.precision = r.precision_defined ? static_cast<double>(tp) / static_cast<double>(tp + fp) : nan;
  r.recall_defined = (tp + fn) > 0;
  r.recall = r.recall_defined ? static_cast<double>(tp) / static_cast<double>(tp + fn) : nan;
  r.f1_defined = r.precision_defined && r.recall_defined && (r.precision + r.recall) > 0.0;
  r.f1 = r.f1_defined ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : nan;
  return r;
}

MetricsReport metrics_from_predictions(const std::vector<int>& labels,
                                       const std::vector<int>& predictions) {
  if (labels.size() != predictions.size()) {
    throw ShapeMismatch("labels and predictions differ in length");
  }
  long tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool positive_truth = labels[i] == 0;
    const bool positive_pred = predictions[i] == 0;
    if (positive_truth && positive_pred) ++tp;
    if (!positive_truth && !positive_pred) ++tn;
    if (!positive_truth && positive_pred) ++fp;
    if (positive_truth && !positive_pred) ++fn;
  }
  return metrics_from_counts(tp, tn, fp, fn);
}

}  // namespace stfgacn::experiment
