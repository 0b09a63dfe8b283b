#include "rc/bench/svg.hpp"

#include "rc/bench/csv.hpp"
#include "rc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rc::bench {

namespace {

constexpr double kWidth = 760, kHeight = 460;
constexpr double kLeft = 70, kRight = 200, kTop = 40, kBottom = 60;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string color(std::size_t i) { return kPalette[i % (sizeof kPalette / sizeof *kPalette)]; }

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

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

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

void header(std::ostringstream& svg, const std::string& title, const std::string& x_label, const std::string& y_label) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
        << "</text>\n"
        << "<text x=\"" << num(kLeft + (kWidth - kLeft - kRight) / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n"
        << "<text x=\"18\" y=\"" << num(kTop + (kHeight - kTop - kBottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << num(kTop + (kHeight - kTop - kBottom) / 2) << ")\">" << escape(y_label) << "</text>\n";
}

void legend(std::ostringstream& svg, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        const double y = kTop + 10 + 18 * double(i);
        svg << "<rect x=\"" << num(kWidth - kRight + 15) << "\" y=\"" << num(y - 9) << "\" width=\"12\" height=\"12\" fill=\""
            << color(i) << "\"/>\n<text x=\"" << num(kWidth - kRight + 32) << "\" y=\"" << num(y + 1) << "\">"
            << escape(names[i]) << "</text>\n";
    }
}

void y_axis(std::ostringstream& svg, double y_min, double y_max) {
    const double plot_h = kHeight - kTop - kBottom;
    for (int i = 0; i <= 5; ++i) {
        const double v = y_min + (y_max - y_min) * i / 5.0;
        const double y = kTop + plot_h * (1.0 - i / 5.0);
        svg << "<line x1=\"" << num(kLeft) << "\" x2=\"" << num(kWidth - kRight) << "\" y1=\"" << num(y) << "\" y2=\""
            << num(y) << "\" stroke=\"#ddd\"/>\n<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kWidth - kLeft - kRight)
        << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
}

} // namespace

std::string line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<LineSeries>& series, double y_min, double y_max) {
    std::ostringstream svg;
    header(svg, title, x_label, y_label);
    double x_min = INFINITY, x_max = -INFINITY;
    for (const auto& s : series) {
        for (double x : s.x) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
        }
    }
    if (!(x_max > x_min)) {
        x_min = std::isfinite(x_min) ? x_min - 1 : 0;
        x_max = x_min + 2;
    }
    if (!(y_max > y_min)) y_max = y_min + 1;
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + plot_w * (x - x_min) / (x_max - x_min); };
    auto py = [&](double y) { return kTop + plot_h * (1.0 - (std::clamp(y, y_min, y_max) - y_min) / (y_max - y_min)); };

    y_axis(svg, y_min, y_max);
    for (int i = 0; i <= 5; ++i) {
        const double v = x_min + (x_max - x_min) * i / 5.0;
        svg << "<text x=\"" << num(px(v)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
            << tick_label(v) << "</text>\n";
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        names.push_back(s.name);
        svg << "<polyline fill=\"none\" stroke=\"" << color(i) << "\" stroke-width=\"2\" points=\"";
        for (std::size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
            if (std::isfinite(s.y[j])) svg << num(px(s.x[j])) << ',' << num(py(s.y[j])) << ' ';
        }
        svg << "\"/>\n";
        for (std::size_t j = 0; j < s.x.size() && j < s.y.size(); ++j) {
            if (!std::isfinite(s.y[j])) continue;
            svg << "<circle cx=\"" << num(px(s.x[j])) << "\" cy=\"" << num(py(s.y[j])) << "\" r=\"3\" fill=\""
                << color(i) << "\"/>\n";
        }
    }
    legend(svg, names);
    svg << "</svg>\n";
    return svg.str();
}

std::string stacked_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& segment_names, const std::vector<StackedBar>& bars) {
    std::ostringstream svg;
    header(svg, title, "", y_label);
    double y_max = 0.0;
    for (const auto& b : bars) {
        double total = 0.0;
        for (double v : b.segments) total += std::max(0.0, v);
        y_max = std::max(y_max, total);
    }
    y_max = y_max > 0 ? y_max * 1.1 : 1.0;
    const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
    y_axis(svg, 0.0, y_max);
    const double slot = bars.empty() ? plot_w : plot_w / double(bars.size());
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const double x = kLeft + slot * (double(i) + 0.15);
        double base = 0.0;
        for (std::size_t k = 0; k < bars[i].segments.size(); ++k) {
            const double v = std::max(0.0, bars[i].segments[k]);
            const double y_top = kTop + plot_h * (1.0 - (base + v) / y_max);
            svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y_top) << "\" width=\"" << num(slot * 0.7)
                << "\" height=\"" << num(plot_h * v / y_max) << "\" fill=\"" << color(k) << "\"/>\n";
            base += v;
        }
        svg << "<text x=\"" << num(x + slot * 0.35) << "\" y=\"" << num(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\" font-size=\"10\">" << escape(bars[i].label) << "</text>\n";
    }
    legend(svg, segment_names);
    svg << "</svg>\n";
    return svg.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << text;
}

} // namespace rc::bench
