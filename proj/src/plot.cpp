#include "msi/plot.hpp"

#include "msi/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace msi {
namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_line_svg(const LinePlot& plot, int width, int height) {
    if (plot.y.size() < 2) fail(ErrorCode::TooShort, "line plot needs two points");
    const double margin = 40.0;
    const auto [lo_it, hi_it] = std::minmax_element(plot.y.begin(), plot.y.end());
    const double lo = *lo_it;
    const double span = std::max(*hi_it - lo, 1e-12);
    const double xs = (width - 2 * margin) / static_cast<double>(plot.y.size() - 1);
    auto px = [&](double x) { return margin + x * xs; };
    auto py = [&](double y) { return height - margin - (y - lo) / span * (height - 2 * margin); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"20\" font-size=\"14\">" << escape(plot.title) << "</text>\n";
    for (double m : plot.markers) {
        os << "<line x1=\"" << px(m) << "\" y1=\"" << margin << "\" x2=\"" << px(m) << "\" y2=\"" << height - margin
           << "\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"black\" points=\"";
    for (std::size_t i = 0; i < plot.y.size(); ++i) os << px(static_cast<double>(i)) << ',' << py(plot.y[i]) << ' ';
    os << "\"/>\n</svg>\n";
    return os.str();
}

std::string render_heatmap_svg(const Eigen::MatrixXd& values, const std::string& title, int cell_px) {
    if (values.size() == 0) fail(ErrorCode::EmptySet, "heatmap of an empty matrix");
    const double lo = values.minCoeff();
    const double span = std::max(values.maxCoeff() - lo, 1e-12);
    const int top = 30;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << values.cols() * cell_px << "\" height=\""
       << values.rows() * cell_px + top << "\">\n";
    os << "<text x=\"4\" y=\"20\" font-size=\"14\">" << escape(title) << "</text>\n";
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            const int g = static_cast<int>(std::lround(255.0 * (1.0 - (values(r, c) - lo) / span)));
            os << "<rect x=\"" << c * cell_px << "\" y=\"" << top + r * cell_px << "\" width=\"" << cell_px
               << "\" height=\"" << cell_px << "\" fill=\"rgb(" << g << ',' << g << ',' << g << ")\"/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
    out << text;
}

}  // namespace msi
