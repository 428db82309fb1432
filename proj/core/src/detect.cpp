#include "facewall/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include <json.hpp>

#include "facewall/divergence.hpp"
#include "facewall/error.hpp"
#include "facewall/timestamp.hpp"

namespace facewall {

namespace {

using nlohmann::json;

json number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

auto sort_key(const Flag& f) {
    const int cls = f.cls ? static_cast<int>(*f.cls) : -1;
    return std::tuple(f.bucket, f.signal, cls);
}

json config_json(const DetectorConfig& c) {
    return {{"window", c.window},       {"z_thresh", c.z_thresh}, {"jsd_thresh", c.jsd_thresh},
            {"min_hits", c.min_hits}, {"min_total", c.min_total}};
}

}  // namespace

void DetectorConfig::validate() const {
    if (window < 2) fail(ErrorKind::kUsage, "bad-window", "window must be at least 2");
    if (!(z_thresh >= 0.0) || !std::isfinite(z_thresh) || !(jsd_thresh >= 0.0) ||
        !std::isfinite(jsd_thresh)) {
        fail(ErrorKind::kUsage, "bad-threshold", "thresholds must be finite and non-negative");
    }
}

std::string_view to_string(Signal s) { return s == Signal::kJsd ? "jsd" : "zscore"; }

std::vector<Flag> zscore_flags(const BucketSeries& series, std::size_t window, double z_thresh,
                               std::uint64_t min_hits) {
    if (window < 2) fail(ErrorKind::kUsage, "bad-window", "window must be at least 2");
    const auto cls = emotion_class(series.cls);
    const auto& pts = series.points;
    std::vector<Flag> flags;
    for (std::size_t t = window; t < pts.size(); ++t) {
        const auto count = pts[t].count;
        if (count < min_hits) continue;
        double mean = 0.0;
        for (std::size_t i = t - window; i < t; ++i) mean += static_cast<double>(pts[i].count);
        mean /= static_cast<double>(window);
        double ss = 0.0;
        for (std::size_t i = t - window; i < t; ++i) {
            const double d = static_cast<double>(pts[i].count) - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(window - 1));
        const double x = static_cast<double>(count);
        if (sd > 0.0) {
            const double z = (x - mean) / sd;
            if (z >= z_thresh) flags.push_back(Flag{pts[t].start, Signal::kZscore, cls, z, z_thresh, 0.0});
        } else if (x > mean) {
            flags.push_back(Flag{pts[t].start, Signal::kZscore, cls,
                                 std::numeric_limits<double>::infinity(), z_thresh, 0.0});
        }
    }
    return flags;
}

std::vector<Flag> shift_flags(std::span<const BucketSeries> classes, std::size_t window,
                              double jsd_thresh, std::uint64_t min_total) {
    if (window < 2) fail(ErrorKind::kUsage, "bad-window", "window must be at least 2");
    if (classes.empty()) return {};
    const std::size_t length = classes.front().points.size();
    for (const auto& s : classes) {
        if (s.points.size() != length) fail(ErrorKind::kInternal, "misaligned-series");
    }

    std::vector<Flag> flags;
    std::vector<double> current(classes.size()), baseline(classes.size());
    for (std::size_t t = window; t < length; ++t) {
        if (classes.front().points[t].total < min_total) continue;
        double current_mass = 0.0, baseline_mass = 0.0;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            current[k] = static_cast<double>(classes[k].points[t].count);
            baseline[k] = 0.0;
            for (std::size_t i = t - window; i < t; ++i) {
                baseline[k] += static_cast<double>(classes[k].points[i].count);
            }
            current_mass += current[k];
            baseline_mass += baseline[k];
        }
        if (current_mass == 0.0 || baseline_mass == 0.0) continue;
        const double d = jsd(current, baseline);
        if (d >= jsd_thresh) {
            flags.push_back(Flag{classes.front().points[t].start, Signal::kJsd, std::nullopt, d, jsd_thresh, 0.0});
        }
    }
    return flags;
}

DeviationReport build_report(std::string user_id, std::vector<Flag> flags, const DetectorConfig& config) {
    std::sort(flags.begin(), flags.end(),
              [](const Flag& a, const Flag& b) { return sort_key(a) < sort_key(b); });
    for (std::size_t i = 1; i < flags.size(); ++i) {
        if (sort_key(flags[i - 1]) == sort_key(flags[i])) {
            fail(ErrorKind::kInternal, "duplicate-flag", format_date(flags[i].bucket));
        }
    }
    for (auto& f : flags) {
        f.severity = f.threshold == 0.0 ? std::numeric_limits<double>::infinity() : f.value / f.threshold;
    }
    return DeviationReport{std::move(user_id), config, std::move(flags)};
}

DeviationReport detect_user(std::string user_id, std::span<const BucketSeries> series,
                            const DetectorConfig& config) {
    config.validate();
    std::vector<Flag> flags;
    std::vector<BucketSeries> mix;
    for (const auto& s : series) {
        if (s.cls == SeriesClass::kVolume) continue;
        mix.push_back(s);
        if (s.cls == SeriesClass::kNeutral) continue;
        auto z = zscore_flags(s, config.window, config.z_thresh, config.min_hits);
        flags.insert(flags.end(), z.begin(), z.end());
    }
    auto shifts = shift_flags(mix, config.window, config.jsd_thresh, config.min_total);
    flags.insert(flags.end(), shifts.begin(), shifts.end());
    return build_report(std::move(user_id), std::move(flags), config);
}

std::string reports_json(std::span<const DeviationReport> reports, std::string_view granularity,
                         std::string_view analysis_hash) {
    json users = json::array();
    for (const auto& r : reports) {
        json flags = json::array();
        for (const auto& f : r.flags) {
            flags.push_back({{"bucket", format_date(f.bucket)},
                             {"signal", std::string(to_string(f.signal))},
                             {"class", f.cls ? json(std::string(to_string(*f.cls))) : json(nullptr)},
                             {"value", number(f.value)},
                             {"threshold", number(f.threshold)},
                             {"severity", number(f.severity)}});
        }
        users.push_back({{"user_id", r.user_id}, {"config", config_json(r.config)}, {"flags", std::move(flags)}});
    }
    json doc = {{"analysis", std::string(analysis_hash)},
                {"granularity", std::string(granularity)},
                {"reports", std::move(users)}};
    return doc.dump(2) + "\n";
}

}  // namespace facewall
