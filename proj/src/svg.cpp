#include "lamsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lamsim/csv.hpp"
#include "lamsim/errors.hpp"

namespace lamsim {

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Scale {
    double lo, hi;
    double to_px(double v, int px_lo, int px_hi) const {
        const double f = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px_lo + f * (px_hi - px_lo);
    }
};

std::ofstream open_svg(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open '" + path + "' for writing");
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
        << "' height='" << kHeight << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n";
    return out;
}

void axes(std::ofstream& out, const Scale& sx, const Scale& sy,
          const std::string& title, const std::string& xlabel,
          const std::string& ylabel) {
    out << "<rect x='" << kLeft << "' y='" << kTop << "' width='"
        << kWidth - kLeft - kRight << "' height='" << kHeight - kTop - kBottom
        << "' fill='none' stroke='black'/>\n";
    out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>"
        << title << "</text>\n";
    out << "<text x='" << kWidth / 2 << "' y='" << kHeight - 10
        << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << kHeight / 2
        << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
        << kHeight / 2 << ")'>" << ylabel << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = sx.lo + (sx.hi - sx.lo) * k / 4.0;
        const double fy = sy.lo + (sy.hi - sy.lo) * k / 4.0;
        const double px = sx.to_px(fx, kLeft, kWidth - kRight);
        const double py = sy.to_px(fy, kHeight - kBottom, kTop);
        out << "<text x='" << px << "' y='" << kHeight - kBottom + 18
            << "' text-anchor='middle' font-size='11'>" << format_double(fx)
            << "</text>\n";
        out << "<text x='" << kLeft - 6 << "' y='" << py + 4
            << "' text-anchor='end' font-size='11'>" << format_double(fy)
            << "</text>\n";
    }
}

}  // namespace

void write_line_plot(const std::string& path, const RealVector& x,
                     const std::vector<RealVector>& series,
                     const std::vector<std::string>& names,
                     const std::string& title, const std::string& xlabel,
                     const std::string& ylabel) {
    if (x.size() == 0 || series.empty()) fail("InvalidParams", "empty plot data");
    Scale sx{x.minCoeff(), x.maxCoeff()};
    double lo = series[0].minCoeff(), hi = series[0].maxCoeff();
    for (const RealVector& s : series) {
        lo = std::min(lo, s.minCoeff());
        hi = std::max(hi, s.maxCoeff());
    }
    if (hi == lo) hi = lo + 1.0;
    Scale sy{lo, hi};

    std::ofstream out = open_svg(path);
    axes(out, sx, sy, title, xlabel, ylabel);
    for (size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill='none' stroke='" << kPalette[s % 5]
            << "' stroke-width='1.5' points='";
        for (Eigen::Index i = 0; i < x.size(); ++i)
            out << sx.to_px(x[i], kLeft, kWidth - kRight) << ","
                << sy.to_px(series[s][i], kHeight - kBottom, kTop) << " ";
        out << "'/>\n";
        if (s < names.size())
            out << "<text x='" << kWidth - kRight - 8 << "' y='" << kTop + 18 + 16 * s
                << "' text-anchor='end' font-size='12' fill='" << kPalette[s % 5]
                << "'>" << names[s] << "</text>\n";
    }
    out << "</svg>\n";
}

void write_heatmap(const std::string& path, const RealVector& x, const RealVector& y,
                   const RealMatrix& values, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel) {
    if (values.rows() != y.size() || values.cols() != x.size())
        fail("DimensionMismatch", "heatmap grid does not match value matrix");
    Scale sx{x.minCoeff(), x.maxCoeff()};
    Scale sy{y.minCoeff(), y.maxCoeff()};
    const double lo = values.minCoeff();
    const double hi = std::max(values.maxCoeff(), lo + 1e-300);

    std::ofstream out = open_svg(path);
    axes(out, sx, sy, title, xlabel, ylabel);
    const double cw = double(kWidth - kLeft - kRight) / x.size();
    const double ch = double(kHeight - kTop - kBottom) / y.size();
    for (Eigen::Index i = 0; i < y.size(); ++i)
        for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double f = (values(i, j) - lo) / (hi - lo);
            const int r = int(255 * f);
            const int b = int(255 * (1.0 - f));
            const int g = int(90 + 80 * f);
            const double px = kLeft + cw * j;
            const double py = kHeight - kBottom - ch * (i + 1);
            out << "<rect x='" << px << "' y='" << py << "' width='" << cw + 0.5
                << "' height='" << ch + 0.5 << "' fill='rgb(" << r << "," << g << ","
                << b << ")'/>\n";
        }
    out << "</svg>\n";
}

}  // namespace lamsim
