#pragma once

#include <string>
#include <vector>

namespace credal::cli {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal standalone line chart: axes, min/max tick labels, one polyline per series.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

}  // namespace credal::cli
