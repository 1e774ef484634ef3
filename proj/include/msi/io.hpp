#pragma once

#include "msi/estimate.hpp"
#include "msi/field_model.hpp"
#include "msi/predict.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace msi {

/// Comma-separated numeric rows; blank lines are skipped. Rows may differ in length.
std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path, bool header = false);

/// Rectangular, non-negative grid of cell accumulations.
GridField load_grid(const std::filesystem::path& path, bool header = false);

/// Every value in the file in reading order (a 1xN or Nx1 table).
StripSeries read_series(const std::filesystem::path& path, Axis axis, bool header = false);

/// Vertical strips are row sums, horizontal strips column sums.
StripSeries strip_sums(const GridField& grid, Axis axis);

/// Totals over rectangles [a_{k1-1}, a_{k1}) x [b_{k2-1}, b_{k2}) (rows x columns).
/// With sub_split each rectangle is cut at its midpoints into four parts numbered
/// row-major. Cells crossing fractional boundaries contribute by overlapped area.
RectangleTotals rect_sums(const GridField& grid, const Breakpoints& a, const Breakpoints& b, bool sub_split);

/// Rows "n,m,x1,...": interval n and subinterval m (1-based) with their partition values.
/// The first line is a header.
SubintervalSamples read_partitions(const std::filesystem::path& path);

/// Rows "k1,k2,sub1,...": rectangle key and sub-rectangle totals. The first line is a header.
RectangleTotals read_rectangles(const std::filesystem::path& path);

/// Fixed-point decimal with the given number of digits.
std::string format_fixed(double x, int digits);

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m, int digits);
void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m, int digits);

}  // namespace msi
