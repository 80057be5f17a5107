#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hproj::cli {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Polyline chart with axes and min/max tick labels.
std::string svg_plot(const std::string& title, const std::string& xlabel, const std::vector<PlotSeries>& series);

}  // namespace hproj::cli
