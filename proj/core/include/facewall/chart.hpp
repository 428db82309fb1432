#pragma once

#include <string>

#include "facewall/timeline.hpp"

namespace facewall {

struct ChartOptions {
    std::string title;
    std::string scope;  // "all users" or a user id
    int width = 960;
    int height = 420;
};

/// Self-contained SVG line chart: solid polyline of per-bucket counts (one
/// vertex per bucket, left axis) and a dashed polyline of the proportion
/// (right axis, 0..1). Output depends only on the inputs.
std::string render_svg(const BucketSeries& series, const ChartOptions& options);

}  // namespace facewall
