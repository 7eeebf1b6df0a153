#include "llocv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "llocv/errors.hpp"

namespace llocv {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (lo > hi) { lo = 0.0; hi = 1.0; }
        if (lo == hi) { lo -= 0.5; hi += 0.5; }
        const double m = 0.04 * (hi - lo);
        lo -= m;
        hi += m;
    }
};

} // namespace

std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series) {
    Range rx, ry;
    for (const auto& s : series) {
        for (double v : s.x) rx.add(v);
        for (double v : s.y) ry.add(v);
    }
    rx.pad();
    ry.pad();

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double v) { return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w; };
    auto py = [&](double v) { return kMarginTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n"
        << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";

    // grid and tick labels
    const int ticks = 5;
    out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int i = 0; i <= ticks; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / ticks;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / ticks;
        out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << kMarginTop << "\" x2=\""
            << num(px(fx)) << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n";
        out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << num(py(fy)) << "\" x2=\""
            << kMarginLeft + plot_w << "\" y2=\"" << num(py(fy)) << "\"/>\n";
    }
    out << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    for (int i = 0; i <= ticks; ++i) {
        const double fx = rx.lo + (rx.hi - rx.lo) * i / ticks;
        const double fy = ry.lo + (ry.hi - ry.lo) * i / ticks;
        out << "<text x=\"" << num(px(fx)) << "\" y=\"" << kMarginTop + plot_h + 16
            << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n";
        out << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    }
    out << "</g>\n";

    // axes
    out << "<g stroke=\"#333333\" stroke-width=\"1.5\" fill=\"none\">\n"
        << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n"
        << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n"
        << "</g>\n";

    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.8\" points=\"";
        const std::size_t npts = std::min(s.x.size(), s.y.size());
        for (std::size_t i = 0; i < npts; ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            out << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
    }

    // legend
    out << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const double ly = kMarginTop + 8 + 16.0 * static_cast<double>(si);
        out << "<rect x=\"" << kMarginLeft + 10 << "\" y=\"" << num(ly - 9)
            << "\" width=\"14\" height=\"4\" fill=\"" << color << "\"/>\n"
            << "<text x=\"" << kMarginLeft + 30 << "\" y=\"" << num(ly - 2) << "\">"
            << series[si].label << "</text>\n";
    }
    out << "</g>\n";

    // titles
    out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" font-family=\"sans-serif\" "
        << "font-size=\"15\" text-anchor=\"middle\">" << title << "</text>\n"
        << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
        << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
        << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">" << y_label
        << "</text>\n</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace llocv
