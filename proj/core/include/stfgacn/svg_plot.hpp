#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace stfgacn::io {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 720;
  int height = 480;
};

/// Self-contained deterministic SVG line plot with a legend entry per
/// series. The CSV stays the source of truth; this is a viewing aid.
void write_line_plot(const std::filesystem::path& file, const PlotSpec& spec);

}  // namespace stfgacn::io
