#include "volcast/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "volcast/errors.hpp"

namespace volcast::svg {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 420.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 24.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 48.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::string polyline(const std::vector<double>& values, double lo, double hi, const char* color) {
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const auto n = values.size();
    std::ostringstream pts;
    for (std::size_t i = 0; i < n; ++i) {
        const double fx = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5;
        const double fy = hi > lo ? (values[i] - lo) / (hi - lo) : 0.5;
        const double x = kMarginLeft + fx * plot_w;
        const double y = kMarginTop + (1.0 - fy) * plot_h;
        if (i) pts << ' ';
        pts << fmt(x) << ',' << fmt(y);
    }
    std::ostringstream out;
    out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"" << pts.str()
        << "\"/>\n";
    return out.str();
}

}  // namespace

std::string line_chart(const std::string& title, const std::vector<Date>& dates,
                       const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.empty() || actual.size() != predicted.size() || dates.size() != actual.size()) {
        throw Error::data("EmptyInput", "line_chart: series must be nonempty and equally long");
    }

    double lo = actual[0], hi = actual[0];
    for (double v : actual) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (double v : predicted) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << static_cast<int>(kWidth) << "\" height=\""
        << static_cast<int>(kHeight) << "\" viewBox=\"0 0 " << static_cast<int>(kWidth) << ' '
        << static_cast<int>(kHeight) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "  <text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << title << "</text>\n";

    // Frame and horizontal gridlines with value labels.
    out << "  <rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop) << "\" width=\"" << fmt(plot_w)
        << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double frac = tick / 4.0;
        const double y = kMarginTop + (1.0 - frac) * plot_h;
        const double value = lo + frac * (hi - lo);
        if (tick > 0 && tick < 4) {
            out << "  <line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
                << fmt(kMarginLeft + plot_w) << "\" y2=\"" << fmt(y)
                << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        }
        out << "  <text x=\"" << fmt(kMarginLeft - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt_value(value)
            << "</text>\n";
    }

    // First / last date labels.
    out << "  <text x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kHeight - 16)
        << "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"11\">" << dates.front().to_string()
        << "</text>\n";
    out << "  <text x=\"" << fmt(kMarginLeft + plot_w) << "\" y=\"" << fmt(kHeight - 16)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << dates.back().to_string()
        << "</text>\n";

    out << polyline(actual, lo, hi, "#1f77b4");
    out << polyline(predicted, lo, hi, "#d62728");

    out << "  <text x=\"" << fmt(kMarginLeft + 12) << "\" y=\"" << fmt(kMarginTop + 18)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#1f77b4\">actual</text>\n";
    out << "  <text x=\"" << fmt(kMarginLeft + 12) << "\" y=\"" << fmt(kMarginTop + 34)
        << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#d62728\">predicted</text>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace volcast::svg
