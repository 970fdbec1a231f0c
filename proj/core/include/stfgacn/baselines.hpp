#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "stfgacn/sample.hpp"

namespace stfgacn::experiment {

/// Magnitude spectrum of a real series after linear detrending, bins
/// 0..K/2. Detrending keeps the slow mass-trajectory ramp out of the low
/// bins so the micro-motion lines dominate.
Eigen::VectorXd magnitude_spectrum(const Eigen::VectorXd& series);

/// The two strongest spectral bins at index >= min_bin, at least two bins
/// apart (so both sides of one leaked line are not picked twice), returned
/// in ascending order.
std::array<double, 2> dominant_bins(const Eigen::VectorXd& spectrum, int min_bin = 3);

/// Per-class centroids of the dominant-bin pairs of one radar's training
/// segments; classification is nearest-centroid in bin space.
struct FftTemplates {
  std::array<double, 2> centroid_class0{};
  std::array<double, 2> centroid_class1{};
  int min_bin = 3;
};

FftTemplates fit_fft_templates(const std::vector<GraphSample>& train, int radar_row);

int fft_classify(const Eigen::VectorXd& series, const FftTemplates& templates);

/// Majority label; ties resolve to class 0.
int voting_ensemble(const std::vector<int>& labels);

}  // namespace stfgacn::experiment
