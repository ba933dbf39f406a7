#pragma once

#include <string>
#include <vector>

namespace biocell::io {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartLabels {
    std::string title;
    std::string x_axis;
    std::string y_axis;
};

/// Polyline chart, one path per series.
std::string line_chart_svg(const std::vector<Series>& series, const ChartLabels& labels);

/// Marker-only chart, one colour per series. Every marker carries a <title>
/// holding its exact CSV values.
std::string scatter_svg(const std::vector<Series>& series, const ChartLabels& labels);

/// Heat map of a row-major matrix (rows along y, bottom to top). Each cell's
/// <title> holds the value formatted exactly as in the CSV.
std::string heatmap_svg(const std::vector<double>& x_values, const std::vector<double>& y_values,
                        const std::vector<double>& cells, double max_value, const ChartLabels& labels);

}  // namespace biocell::io
