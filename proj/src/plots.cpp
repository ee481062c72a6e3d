#include "graphbench/plots.hpp"

#include "graphbench/collect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace graphbench {

namespace {

using namespace plotdim;

constexpr double plot_w = width - margin_left - margin_right;
constexpr double plot_h = height - margin_top - margin_bottom;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                "#d62728", "#9467bd", "#8c564b"};

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.2f", v);
    return buffer;
}

std::string fmt_tick(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3g", v);
    return buffer;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    for (char ch : text) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

double x_pixel(const AxisRange& axis, double value) {
    return margin_left + axis_fraction(axis, value) * plot_w;
}

double y_pixel(const AxisRange& axis, double value) {
    return height - margin_bottom - axis_fraction(axis, value) * plot_h;
}

std::string svg_open() {
    const std::string w = std::to_string(int(width));
    const std::string h = std::to_string(int(height));
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h +
           "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"white\"/>\n";
    return out;
}

std::string line_el(double x1, double y1, double x2, double y2, const std::string& stroke,
                    const std::string& extra = "") {
    return "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) + "\" y2=\"" +
           fmt(y2) + "\" stroke=\"" + stroke + "\"" + extra + "/>\n";
}

std::string text_el(double x, double y, const std::string& text, const std::string& anchor,
                    const std::string& extra = "") {
    return "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" font-size=\"12\" text-anchor=\"" +
           anchor + "\"" + extra + ">" + xml_escape(text) + "</text>\n";
}

std::string frame_and_labels(const std::string& x_label, const std::string& y_label) {
    std::string out;
    out += line_el(margin_left, height - margin_bottom, width - margin_right,
                   height - margin_bottom, "black");
    out += line_el(margin_left, margin_top, margin_left, height - margin_bottom, "black");
    out += text_el(margin_left + plot_w / 2, height - 8, x_label, "middle");
    out += text_el(0, 0, y_label, "middle",
                   " transform=\"translate(14," + fmt(margin_top + plot_h / 2) +
                       ") rotate(-90)\"");
    return out;
}

// gridlines and tick labels; log axes get one line per decade
std::string axis_ticks(const AxisRange& axis, bool vertical) {
    std::string out;
    const auto emit = [&](double value, const std::string& label) {
        if (vertical) {
            const double y = y_pixel(axis, value);
            out += line_el(margin_left, y, width - margin_right, y, "#dddddd");
            out += text_el(margin_left - 6, y + 4, label, "end");
        } else {
            const double x = x_pixel(axis, value);
            out += line_el(x, margin_top, x, height - margin_bottom, "#dddddd");
            out += text_el(x, height - margin_bottom + 16, label, "middle");
        }
    };
    if (axis.scale == AxisScale::log10) {
        const int first = int(std::lround(std::log10(axis.lo)));
        const int last = int(std::lround(std::log10(axis.hi)));
        for (int d = first; d <= last; ++d) {
            char label[16];
            std::snprintf(label, sizeof label, "1e%d", d);
            emit(std::pow(10.0, d), label);
        }
    } else {
        for (int t = 0; t <= 4; ++t) {
            const double value = axis.lo + (axis.hi - axis.lo) * t / 4.0;
            emit(value, fmt_tick(value));
        }
    }
    return out;
}

std::string mark_el(MarkShape shape, double x, double y, const std::string& color) {
    switch (shape) {
    case MarkShape::circle:
        return "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"3.5\" fill=\"" + color +
               "\"/>\n";
    case MarkShape::cross:
        return "<path d=\"M " + fmt(x - 3.5) + " " + fmt(y - 3.5) + " L " + fmt(x + 3.5) + " " +
               fmt(y + 3.5) + " M " + fmt(x - 3.5) + " " + fmt(y + 3.5) + " L " + fmt(x + 3.5) +
               " " + fmt(y - 3.5) + "\" stroke=\"" + color +
               "\" stroke-width=\"1.5\" fill=\"none\"/>\n";
    case MarkShape::square:
        return "<rect x=\"" + fmt(x - 3.5) + "\" y=\"" + fmt(y - 3.5) +
               "\" width=\"7.00\" height=\"7.00\" fill=\"" + color + "\"/>\n";
    }
    return {};
}

} // namespace

AxisRange nice_axis(std::span<const double> values, AxisScale scale) {
    if (values.empty()) throw std::invalid_argument("axis needs at least one value");
    double lo = values[0], hi = values[0];
    for (double v : values) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (scale == AxisScale::log10) {
        if (lo <= 0.0) throw std::invalid_argument("log axis needs positive values");
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (lo == hi) {
            lo /= 10.0;
            hi *= 10.0;
        }
    } else if (lo == hi) {
        const double pad = std::max(1.0, std::abs(lo) * 0.1);
        lo -= pad;
        hi += pad;
    }
    return {lo, hi, scale};
}

double axis_fraction(const AxisRange& axis, double value) {
    if (axis.scale == AxisScale::log10)
        return (std::log10(value) - std::log10(axis.lo)) /
               (std::log10(axis.hi) - std::log10(axis.lo));
    return (value - axis.lo) / (axis.hi - axis.lo);
}

std::string scatter_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                        const std::string& y_label, AxisScale x_scale, AxisScale y_scale) {
    if (series.empty()) throw std::invalid_argument("no series to plot");
    std::set<std::string> labels;
    std::vector<double> xs, ys;
    for (const auto& s : series) {
        if (s.points.empty())
            throw std::invalid_argument("series '" + s.label + "' has no points");
        if (!labels.insert(s.label).second)
            throw std::invalid_argument("duplicate series label '" + s.label + "'");
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            const auto [x, y] = s.points[i];
            if (x_scale == AxisScale::log10 && x <= 0.0)
                throw std::invalid_argument("series '" + s.label + "' point " +
                                            std::to_string(i) +
                                            " has non-positive x on a log axis");
            if (y_scale == AxisScale::log10 && y <= 0.0)
                throw std::invalid_argument("series '" + s.label + "' point " +
                                            std::to_string(i) +
                                            " has non-positive y on a log axis");
            xs.push_back(x);
            ys.push_back(y);
        }
    }
    const AxisRange x_axis = nice_axis(xs, x_scale);
    const AxisRange y_axis = nice_axis(ys, y_scale);

    std::string out = svg_open();
    out += axis_ticks(x_axis, false);
    out += axis_ticks(y_axis, true);
    out += frame_and_labels(x_label, y_label);
    for (std::size_t s = 0; s < series.size(); ++s) {
        const std::string color = kPalette[s % std::size(kPalette)];
        for (const auto& [x, y] : series[s].points)
            out += mark_el(series[s].mark, x_pixel(x_axis, x), y_pixel(y_axis, y), color);
        out += text_el(width - margin_right - 4, margin_top + 14.0 * double(s + 1),
                       series[s].label, "end", " fill=\"" + color + "\"");
    }
    out += "</svg>\n";
    return out;
}

std::string speedup_bars_svg(const std::vector<std::pair<std::string, double>>& ratios,
                             const std::string& y_label) {
    if (ratios.empty()) throw std::invalid_argument("no ratios to plot");
    std::vector<double> values{1.0};
    for (const auto& [name, ratio] : ratios) {
        if (ratio <= 0.0)
            throw std::invalid_argument("ratio for '" + name + "' must be positive");
        values.push_back(ratio);
    }
    const AxisRange y_axis = nice_axis(values, AxisScale::log10);
    const double baseline = y_pixel(y_axis, 1.0);
    const double gm = geometric_mean(std::vector<double>(values.begin() + 1, values.end()));

    std::string out = svg_open();
    out += axis_ticks(y_axis, true);
    out += frame_and_labels("", y_label);
    const double slot = plot_w / double(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double center = margin_left + slot * (double(i) + 0.5);
        const double top = y_pixel(y_axis, ratios[i].second);
        out += "<rect class=\"bar\" x=\"" + fmt(center - slot * 0.35) + "\" y=\"" +
               fmt(std::min(top, baseline)) + "\" width=\"" + fmt(slot * 0.7) +
               "\" height=\"" + fmt(std::abs(baseline - top)) + "\" fill=\"#1f77b4\"/>\n";
        out += text_el(center, height - margin_bottom + 16, ratios[i].first, "middle");
    }
    out += line_el(margin_left, baseline, width - margin_right, baseline, "black",
                   " class=\"unity\"");
    const double gm_y = y_pixel(y_axis, gm);
    out += line_el(margin_left, gm_y, width - margin_right, gm_y, "#ff7f0e",
                   " class=\"gm\" stroke-dasharray=\"6 3\"");
    out += text_el(width - margin_right - 4, gm_y - 4, "geometric mean " + fmt_tick(gm), "end",
                   " fill=\"#ff7f0e\"");
    out += "</svg>\n";
    return out;
}

double quantile(std::span<const double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of nothing");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile level in [0, 1]");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = double(sorted.size() - 1) * p;
    const auto low = std::size_t(std::floor(h));
    if (low + 1 >= sorted.size()) return sorted.back();
    return sorted[low] + (h - double(low)) * (sorted[low + 1] - sorted[low]);
}

BoxStats box_stats(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("box of nothing");
    BoxStats stats;
    stats.median = quantile(values, 0.5);
    stats.q1 = quantile(values, 0.25);
    stats.q3 = quantile(values, 0.75);
    const double reach = 1.5 * (stats.q3 - stats.q1);
    const double low_fence = stats.q1 - reach;
    const double high_fence = stats.q3 + reach;
    stats.whisker_low = stats.q1;
    stats.whisker_high = stats.q3;
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    bool any_inside = false;
    for (double v : sorted) {
        if (v < low_fence || v > high_fence) {
            stats.outliers.push_back(v);
        } else if (!any_inside) {
            stats.whisker_low = stats.whisker_high = v;
            any_inside = true;
        } else {
            stats.whisker_high = v;
        }
    }
    return stats;
}

std::string box_plot_svg(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                         const std::string& y_label) {
    if (groups.empty()) throw std::invalid_argument("no groups to plot");
    std::vector<double> all;
    for (const auto& [label, values] : groups) {
        if (values.empty()) throw std::invalid_argument("group '" + label + "' is empty");
        all.insert(all.end(), values.begin(), values.end());
    }
    const AxisRange y_axis = nice_axis(all, AxisScale::linear);

    std::string out = svg_open();
    out += axis_ticks(y_axis, true);
    out += frame_and_labels("", y_label);
    const double slot = plot_w / double(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto stats = box_stats(groups[i].second);
        const double center = margin_left + slot * (double(i) + 0.5);
        const double half = slot * 0.3;
        const double q1 = y_pixel(y_axis, stats.q1);
        const double q3 = y_pixel(y_axis, stats.q3);
        const double med = y_pixel(y_axis, stats.median);
        const double wlo = y_pixel(y_axis, stats.whisker_low);
        const double whi = y_pixel(y_axis, stats.whisker_high);
        out += "<rect class=\"box\" x=\"" + fmt(center - half) + "\" y=\"" + fmt(q3) +
               "\" width=\"" + fmt(half * 2) + "\" height=\"" + fmt(q1 - q3) +
               "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
        out += line_el(center - half, med, center + half, med, "#ff7f0e",
                       " class=\"median\" stroke-width=\"2\"");
        out += line_el(center, q1, center, wlo, "black", " class=\"whisker\"");
        out += line_el(center, q3, center, whi, "black", " class=\"whisker\"");
        out += line_el(center - half / 2, wlo, center + half / 2, wlo, "black");
        out += line_el(center - half / 2, whi, center + half / 2, whi, "black");
        for (double v : stats.outliers)
            out += "<circle class=\"outlier\" cx=\"" + fmt(center) + "\" cy=\"" +
                   fmt(y_pixel(y_axis, v)) + "\" r=\"2.5\" fill=\"black\"/>\n";
        out += text_el(center, height - margin_bottom + 16, groups[i].first, "middle");
    }
    out += "</svg>\n";
    return out;
}

std::vector<double> relative_deviation(std::span<const double> values) {
    if (values.size() < 2) throw std::invalid_argument("deviation needs >= 2 values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= double(values.size());
    if (mean == 0.0) throw std::invalid_argument("deviation undefined for zero mean");
    std::vector<double> out;
    for (double v : values) out.push_back((v - mean) / mean);
    return out;
}

} // namespace graphbench
