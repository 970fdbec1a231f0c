#include "stfgacn/baselines.hpp"

#include <cmath>
#include <numbers>

#include "stfgacn/common.hpp"

namespace stfgacn::experiment {

Eigen::VectorXd magnitude_spectrum(const Eigen::VectorXd& series) {
  const Eigen::Index n = series.size();
  if (n < 4) {
    throw ShapeMismatch("spectrum needs at least 4 samples");
  }
  // Least-squares linear detrend.
  const double mean_t = static_cast<double>(n - 1) / 2.0;
  double sxx = 0.0, sxy = 0.0;
  const double mean_y = series.mean();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double dt = static_cast<double>(k) - mean_t;
    sxx += dt * dt;
    sxy += dt * (series(k) - mean_y);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  Eigen::VectorXd detrended(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    detrended(k) = series(k) - mean_y - slope * (static_cast<double>(k) - mean_t);
  }

  const Eigen::Index bins = n / 2 + 1;
  Eigen::VectorXd magnitude(bins);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (Eigen::Index b = 0; b < bins; ++b) {
    double re = 0.0, im = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double angle = step * static_cast<double>(b) * static_cast<double>(k);
      re += detrended(k) * std::cos(angle);
      im -= detrended(k) * std::sin(angle);
    }
    magnitude(b) = std::hypot(re, im);
  }
  return magnitude;
}

std::array<double, 2> dominant_bins(const Eigen::VectorXd& spectrum, int min_bin) {
  const Eigen::Index bins = spectrum.size();
  Eigen::Index best = -1;
  for (Eigen::Index b = min_bin; b < bins; ++b) {
    if (best < 0 || spectrum(b) > spectrum(best)) best = b;
  }
  Eigen::Index second = -1;
  for (Eigen::Index b = min_bin; b < bins; ++b) {
    if (std::abs(b - best) < 2) continue;
    if (second < 0 || spectrum(b) > spectrum(second)) second = b;
  }
  if (best < 0 || second < 0) {
    throw ShapeMismatch("spectrum too short for dominant-bin extraction");
  }
  double lo = static_cast<double>(std::min(best, second));
  double hi = static_cast<double>(std::max(best, second));
  return {lo, hi};
}

FftTemplates fit_fft_templates(const std::vector<GraphSample>& train, int radar_row) {
  FftTemplates t;
  double n0 = 0.0, n1 = 0.0;
  for (const GraphSample& s : train) {
    const Eigen::VectorXd spectrum = magnitude_spectrum(s.signals.row(radar_row).transpose());
    const std::array<double, 2> bins = dominant_bins(spectrum, t.min_bin);
    if (s.label == 0) {
      t.centroid_class0[0] += bins[0];
      t.centroid_class0[1] += bins[1];
      n0 += 1.0;
    } else {
      t.centroid_class1[0] += bins[0];
      t.centroid_class1[1] += bins[1];
      n1 += 1.0;
    }
  }
  if (n0 == 0.0 || n1 == 0.0) {
    throw TooFewSamples("spectral templates need training segments from both classes");
  }
  t.centroid_class0[0] /= n0;
  t.centroid_class0[1] /= n0;
  t.centroid_class1[0] /= n1;
  t.centroid_class1[1] /= n1;
  return t;
}

int fft_classify(const Eigen::VectorXd& series, const FftTemplates& templates) {
  const Eigen::VectorXd spectrum = magnitude_spectrum(series);
  const std::array<double, 2> bins = dominant_bins(spectrum, templates.min_bin);
  const double d0 = std::hypot(bins[0] - templates.centroid_class0[0],
                               bins[1] - templates.centroid_class0[1]);
  const double d1 = std::hypot(bins[0] - templates.centroid_class1[0],
                               bins[1] - templates.centroid_class1[1]);
  return d0 <= d1 ? 0 : 1;
}

int voting_ensemble(const std::vector<int>& labels) {
  long ones = 0;
  for (int label : labels) {
    if (label == 1) ++ones;
  }
  const long zeros = static_cast<long>(labels.size()) - ones;
  return ones > zeros ? 1 : 0;
}

}  // namespace stfgacn::experiment
