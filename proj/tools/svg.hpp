#pragma once

#include <string>
#include <vector>

namespace hocomp::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-finite values are skipped
};

/// Self-contained SVG line chart with axes and a legend.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);

/// Closed polar curve r(theta) with the unit circle for reference.
std::string polar_chart(const std::string& title, const std::vector<double>& angles,
                        const std::vector<double>& radii);

/// Polyline of a path in a square frame.
std::string path_chart(const std::string& title, const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hocomp::cli
