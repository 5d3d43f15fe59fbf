#pragma once

#include <string>
#include <vector>

namespace nlfp {

// Minimal line-plot writer: axes, tick labels, one polyline per series,
// optional log scales.  CSV files remain the ground truth; these plots are a
// convenience view.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  bool log_x = false;
  bool log_y = false;
};

void write_svg_lineplot(const std::string& path, const std::vector<PlotSeries>& series,
                        const PlotOptions& options);

}  // namespace nlfp
