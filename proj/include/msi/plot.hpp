#pragma once

#include <Eigen/Core>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace msi {

struct LinePlot {
    std::string title;
    std::vector<double> y;
    std::vector<double> markers;  // vertical guide lines at these x positions
};

/// Polyline over x = 0..n-1 with optional guide lines.
std::string render_line_svg(const LinePlot& plot, int width = 640, int height = 360);

/// Grey-scale cell map, row 0 at the top.
std::string render_heatmap_svg(const Eigen::MatrixXd& values, const std::string& title, int cell_px = 12);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace msi
