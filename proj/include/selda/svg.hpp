#pragma once

#include <string>
#include <vector>

namespace selda {

/// One polyline series for a timeseries/scatter plot.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool points_only = false;  // scatter markers instead of a line
};

/// Five-number summary box for a box plot.
struct PlotBox {
  std::string label;
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 860;
  int height = 480;
  std::vector<PlotSeries> series;  // timeseries / scatter content
  std::vector<PlotBox> boxes;      // box-plot content (exclusive with series)
};

/// Renders the spec to standalone SVG text. Output is deterministic for
/// identical inputs.
std::string render_svg(const PlotSpec& spec);

void write_svg(const PlotSpec& spec, const std::string& path);

}  // namespace selda
