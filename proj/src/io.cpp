#include "msi/io.hpp"

#include "msi/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace msi {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, const std::string& where) {
    const std::string t = trim(token);
    if (t.empty()) fail(ErrorCode::NonNumeric, "empty field at " + where);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE) fail(ErrorCode::NonNumeric, "'" + t + "' at " + where);
    if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "'" + t + "' at " + where);
    return v;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
    return in;
}

long as_index(double v, const std::string& where) {
    if (v != std::round(v) || v < 1.0) fail(ErrorCode::InvalidArgument, "index must be a positive integer at " + where);
    return static_cast<long>(v);
}

double overlap(double lo, double hi, double cell) { return std::max(0.0, std::min(hi, cell + 1.0) - std::max(lo, cell)); }

// Area-weighted sum of grid cells over [r0, r1) x [c0, c1).
double region_sum(const Eigen::MatrixXd& g, double r0, double r1, double c0, double c1) {
    double acc = 0.0;
    const auto rb = static_cast<Eigen::Index>(std::floor(r0));
    const auto re = static_cast<Eigen::Index>(std::ceil(r1));
    const auto cb = static_cast<Eigen::Index>(std::floor(c0));
    const auto ce = static_cast<Eigen::Index>(std::ceil(c1));
    for (Eigen::Index r = rb; r < re; ++r) {
        const double wr = overlap(r0, r1, static_cast<double>(r));
        if (wr == 0.0) continue;
        for (Eigen::Index c = cb; c < ce; ++c) {
            const double wc = overlap(c0, c1, static_cast<double>(c));
            if (wc != 0.0) acc += wr * wc * g(r, c);
        }
    }
    return acc;
}

}  // namespace

std::vector<std::vector<double>> read_csv_rows(const std::filesystem::path& path, bool header) {
    auto in = open(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (header && line_no == 1) continue;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string field;
        std::size_t col = 0;
        while (std::getline(ss, field, ',')) {
            ++col;
            row.push_back(parse_number(field, path.string() + ":" + std::to_string(line_no) + ":" + std::to_string(col)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

GridField load_grid(const std::filesystem::path& path, bool header) {
    const auto rows = read_csv_rows(path, header);
    if (rows.empty()) fail(ErrorCode::EmptySet, path.string() + " holds no data");
    const std::size_t width = rows.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != width) {
            fail(ErrorCode::Ragged, path.string() + ": row " + std::to_string(r + 1) + " has " +
                                        std::to_string(rows[r].size()) + " fields, expected " + std::to_string(width));
        }
        for (std::size_t c = 0; c < width; ++c) {
            if (rows[r][c] < 0.0) fail(ErrorCode::Negative, path.string() + ": negative accumulation");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return GridField(std::move(m));
}

StripSeries read_series(const std::filesystem::path& path, Axis axis, bool header) {
    std::vector<double> values;
    for (const auto& row : read_csv_rows(path, header)) values.insert(values.end(), row.begin(), row.end());
    return StripSeries(axis, std::move(values));
}

StripSeries strip_sums(const GridField& grid, Axis axis) {
    if (axis == Axis::time) fail(ErrorCode::InvalidArgument, "a single grid has no time strips");
    const Eigen::VectorXd s = axis == Axis::vertical ? Eigen::VectorXd(grid.values().rowwise().sum())
                                                     : Eigen::VectorXd(grid.values().colwise().sum().transpose());
    return StripSeries(axis, std::vector<double>(s.data(), s.data() + s.size()));
}

RectangleTotals rect_sums(const GridField& grid, const Breakpoints& a, const Breakpoints& b, bool sub_split) {
    if (a[0] < 0.0 || b[0] < 0.0 || a[a.size() - 1] > static_cast<double>(grid.rows()) ||
        b[b.size() - 1] > static_cast<double>(grid.cols())) {
        fail(ErrorCode::OutOfExtent, "breakpoints exceed the grid extent");
    }
    RectangleTotals out;
    const auto& g = grid.values();
    for (std::size_t k1 = 0; k1 < a.intervals(); ++k1) {
        for (std::size_t k2 = 0; k2 < b.intervals(); ++k2) {
            const double r0 = a[k1], r1 = a[k1 + 1], c0 = b[k2], c1 = b[k2 + 1];
            std::vector<double> parts;
            if (sub_split) {
                const double rm = 0.5 * (r0 + r1), cm = 0.5 * (c0 + c1);
                parts = {region_sum(g, r0, rm, c0, cm), region_sum(g, r0, rm, cm, c1), region_sum(g, rm, r1, c0, cm),
                         region_sum(g, rm, r1, cm, c1)};
            } else {
                parts = {region_sum(g, r0, r1, c0, c1)};
            }
            out.set({static_cast<long>(k1 + 1), static_cast<long>(k2 + 1)}, std::move(parts));
        }
    }
    return out;
}

SubintervalSamples read_partitions(const std::filesystem::path& path) {
    SubintervalSamples out;
    for (const auto& row : read_csv_rows(path, true)) {
        if (row.size() < 4) fail(ErrorCode::TooShort, path.string() + ": need n, m and at least two values");
        const auto n = static_cast<std::size_t>(as_index(row[0], path.string()));
        const auto m = static_cast<std::size_t>(as_index(row[1], path.string()));
        if (out.size() < n) out.resize(n);
        if (out[n - 1].size() < m) out[n - 1].resize(m);
        out[n - 1][m - 1].assign(row.begin() + 2, row.end());
    }
    for (const auto& interval : out) {
        for (const auto& sub : interval) {
            if (sub.empty()) fail(ErrorCode::Ragged, path.string() + ": missing (n, m) row");
        }
    }
    return out;
}

RectangleTotals read_rectangles(const std::filesystem::path& path) {
    RectangleTotals out;
    for (const auto& row : read_csv_rows(path, true)) {
        if (row.size() < 3) fail(ErrorCode::TooShort, path.string() + ": need k1, k2 and at least one total");
        out.set({as_index(row[0], path.string()), as_index(row[1], path.string())},
                std::vector<double>(row.begin() + 2, row.end()));
    }
    if (out.size() == 0) fail(ErrorCode::EmptySet, path.string() + " holds no rectangles");
    return out;
}

std::string format_fixed(double x, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    std::string out = os.str();
    // Tiny negatives print as "-0.000"; drop the sign so files diff cleanly.
    if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
    return out;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m, int digits) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out << ',';
            out << format_fixed(m(r, c), digits);
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m, int digits) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    write_matrix_csv(out, m, digits);
}

}  // namespace msi
