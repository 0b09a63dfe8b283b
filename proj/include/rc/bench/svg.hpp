#pragma once

#include <string>
#include <vector>

namespace rc::bench {

struct LineSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Polyline chart with markers and a legend. The y range is fixed by the caller.
std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<LineSeries>& series, double y_min, double y_max);

struct StackedBar {
    std::string label;
    std::vector<double> segments; // bottom to top
};

std::string stacked_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& segment_names, const std::vector<StackedBar>& bars);

void write_text_file(const std::string& path, const std::string& text);

} // namespace rc::bench
