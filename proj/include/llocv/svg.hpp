#pragma once

#include <string>
#include <vector>

namespace llocv {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Self-contained SVG line plot. Non-finite points are skipped. Output is a
/// pure function of its inputs (fixed formatting, no timestamps).
std::string render_line_plot(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series);

void write_text_file(const std::string& path, const std::string& content);

} // namespace llocv
