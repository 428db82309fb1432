#include "facewall/chart.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "facewall/timestamp.hpp"

namespace facewall {

namespace {

constexpr int kLeft = 64;
constexpr int kRight = 64;
constexpr int kTop = 48;
constexpr int kBottom = 72;

std::string fixed(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

std::string escape(std::string_view text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::uint64_t nice_ceiling(std::uint64_t v) {
    if (v <= 4) return 4;
    std::uint64_t step = 1;
    while (step * 10 < v) step *= 10;
    for (const std::uint64_t m : {1, 2, 4, 5, 10}) {
        if (step * m >= v && (step * m) % 4 == 0) return step * m;
    }
    return (v + 3) / 4 * 4;
}

std::string text(double x, double y, std::string_view anchor, std::string_view body, int size = 11) {
    return "<text x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" text-anchor=\"" + std::string(anchor) +
           "\" font-family=\"sans-serif\" font-size=\"" + std::to_string(size) + "\" fill=\"#333\">" +
           escape(body) + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2, std::string_view stroke) {
    return "<line x1=\"" + fixed(x1) + "\" y1=\"" + fixed(y1) + "\" x2=\"" + fixed(x2) + "\" y2=\"" +
           fixed(y2) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string render_svg(const BucketSeries& series, const ChartOptions& options) {
    const double width = options.width;
    const double height = options.height;
    const double plot_w = width - kLeft - kRight;
    const double plot_h = height - kTop - kBottom;
    const auto& pts = series.points;

    std::uint64_t max_count = 0;
    for (const auto& p : pts) max_count = std::max(max_count, p.count);
    const std::uint64_t y_max = nice_ceiling(max_count);

    auto x_of = [&](std::size_t i) {
        if (pts.size() <= 1) return kLeft + plot_w / 2.0;
        return kLeft + plot_w * static_cast<double>(i) / static_cast<double>(pts.size() - 1);
    };
    auto y_of = [&](double fraction) { return kTop + plot_h * (1.0 - fraction); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(options.width) +
           "\" height=\"" + std::to_string(options.height) + "\" viewBox=\"0 0 " +
           std::to_string(options.width) + " " + std::to_string(options.height) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(options.width) + "\" height=\"" +
           std::to_string(options.height) + "\" fill=\"#ffffff\"/>\n";
    svg += text(width / 2.0, 24, "middle", options.title + " (" + options.scope + ")", 15);

    // Grid and left/right axis labels.
    for (int k = 0; k <= 4; ++k) {
        const double y = y_of(k / 4.0);
        svg += line(kLeft, y, kLeft + plot_w, y, k == 0 ? "#333333" : "#e0e0e0");
        svg += text(kLeft - 6, y + 4, "end", std::to_string(y_max * static_cast<std::uint64_t>(k) / 4));
        svg += text(kLeft + plot_w + 6, y + 4, "start", fixed(k / 4.0));
    }
    svg += line(kLeft, kTop, kLeft, kTop + plot_h, "#333333");
    svg += line(kLeft + plot_w, kTop, kLeft + plot_w, kTop + plot_h, "#333333");

    // At most ~12 x labels.
    const std::size_t stride = std::max<std::size_t>(1, (pts.size() + 11) / 12);
    for (std::size_t i = 0; i < pts.size(); i += stride) {
        const double x = x_of(i);
        svg += line(x, kTop + plot_h, x, kTop + plot_h + 4, "#333333");
        svg += text(x, kTop + plot_h + 18, "middle", format_date(pts[i].start), 10);
    }

    std::string count_points, proportion_points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = x_of(i);
        if (i > 0) {
            count_points += ' ';
            proportion_points += ' ';
        }
        count_points += fixed(x) + "," +
                        fixed(y_of(static_cast<double>(pts[i].count) / static_cast<double>(y_max)));
        proportion_points += fixed(x) + "," + fixed(y_of(pts[i].proportion));
    }
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"" + count_points + "\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\" points=\"" +
           proportion_points + "\"/>\n";

    const double legend_y = height - 20;
    svg += line(kLeft, legend_y - 4, kLeft + 28, legend_y - 4, "#1f77b4");
    svg += text(kLeft + 34, legend_y, "start",
                std::string(to_string(series.cls)) + " " + std::string(to_string(series.measure)) +
                    " per " + "bucket (left axis; per-bucket counts, not cumulative)");
    svg += "<line x1=\"" + fixed(kLeft + plot_w * 0.62) + "\" y1=\"" + fixed(legend_y - 4) + "\" x2=\"" +
           fixed(kLeft + plot_w * 0.62 + 28) + "\" y2=\"" + fixed(legend_y - 4) +
           "\" stroke=\"#d62728\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    svg += text(kLeft + plot_w * 0.62 + 34, legend_y, "start", "proportion of bucket (right axis)");
    svg += "</svg>\n";
    return svg;
}

}  // namespace facewall
