#pragma once

#include <array>
#include <string>
#include <vector>

#include "vmt/core.hpp"
#include "vmt/mono.hpp"

namespace vmt::io {

// Round-trip decimal formatting used for all numeric file output.
std::string format_double(double v);

std::string profile_csv(const mono::DensityProfile& profile);

std::string obj_mesh(const std::vector<Vec>& vertices,
                     const std::vector<std::array<int, 3>>& triangles);

std::string polyline_csv(const std::vector<Vec>& points);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Minimal self-contained SVG plotting: line chart (optionally log-x) and a
// labelled bar chart.  No external renderer; styling is inlined.
struct Series {
  std::string label;
  std::string color;
  std::vector<double> x, y;
};

std::string line_plot_svg(const std::string& title, const std::vector<Series>& series, bool log_x);

std::string bar_chart_svg(const std::string& title, const std::vector<std::string>& labels,
                          const std::vector<double>& values);

}  // namespace vmt::io
