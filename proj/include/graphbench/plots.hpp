#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace graphbench {

enum class MarkShape { circle, cross, square };
enum class AxisScale { linear, log10 };

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
    MarkShape mark = MarkShape::circle;
};

// Fixed canvas so callers and tests can predict pixel positions.
namespace plotdim {
inline constexpr double width = 640.0;
inline constexpr double height = 480.0;
inline constexpr double margin_left = 70.0;
inline constexpr double margin_right = 20.0;
inline constexpr double margin_top = 20.0;
inline constexpr double margin_bottom = 55.0;
} // namespace plotdim

struct AxisRange {
    double lo = 0.0;
    double hi = 1.0;
    AxisScale scale = AxisScale::linear;
};

/// Log axes snap to whole decades (and widen one decade each way when the
/// data spans none); linear axes run min to max.
AxisRange nice_axis(std::span<const double> values, AxisScale scale);

/// Position of a value along the axis as a fraction in [0, 1].
double axis_fraction(const AxisRange& axis, double value);

/**
 * Log-log (by default) scatter with one mark shape per series, so the figure
 * survives grey-scale printing. Decade gridlines on log axes.
 */
std::string scatter_svg(const std::vector<PlotSeries>& series, const std::string& x_label,
                        const std::string& y_label, AxisScale x_scale = AxisScale::log10,
                        AxisScale y_scale = AxisScale::log10);

/**
 * One bar per instance, in the order given (callers sort by node count).
 * Bars grow from the unity line on a log10 y-axis; the geometric mean of the
 * ratios is drawn as a dashed annotation line.
 */
std::string speedup_bars_svg(const std::vector<std::pair<std::string, double>>& ratios,
                             const std::string& y_label);

/// Linear-interpolation quantile of the values (the type-7 rule).
double quantile(std::span<const double> values, double p);

struct BoxStats {
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    double whisker_low = 0.0;  ///< smallest value within 1.5 IQR of the box
    double whisker_high = 0.0; ///< largest value within 1.5 IQR of the box
    std::vector<double> outliers;
};

BoxStats box_stats(std::span<const double> values);

std::string box_plot_svg(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                         const std::string& y_label);

/// (v - mean) / mean for each value; the outputs sum to zero.
std::vector<double> relative_deviation(std::span<const double> values);

} // namespace graphbench
