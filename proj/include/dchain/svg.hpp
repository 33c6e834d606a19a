#pragma once

#include <string>
#include <vector>

namespace dchain {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> y_err;  // optional, drawn as vertical bars when markers is set
  std::string color = "#000000";
  bool markers = false;  // points instead of a polyline
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

// Self-contained SVG document: axes, ticks with labels, one polyline or
// marker set per series and a legend.
std::string render_svg(const LinePlot& plot);

// Tick positions at 1/2/5 x 10^k spacing covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace dchain
