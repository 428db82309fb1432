#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facewall/lexicon.hpp"
#include "facewall/timeline.hpp"

namespace facewall {

struct DetectorConfig {
    std::size_t window = 6;
    double z_thresh = 2.0;
    double jsd_thresh = 0.25;
    std::uint64_t min_hits = 3;
    std::uint64_t min_total = 5;

    /// Throws Error{kUsage, "bad-window"} for window < 2 and
    /// Error{kUsage, "bad-threshold"} for negative or non-finite thresholds.
    void validate() const;
};

/// Sorted jsd before zscore, matching the names' alphabetical order.
enum class Signal { kJsd, kZscore };

std::string_view to_string(Signal s);

struct Flag {
    std::chrono::sys_days bucket;
    Signal signal = Signal::kZscore;
    std::optional<EmotionClass> cls;  // set for zscore flags
    double value = 0.0;               // +inf for a rise over a flat baseline
    double threshold = 0.0;
    double severity = 0.0;            // value / threshold, filled by build_report
};

/// Trailing-window z-score on bucket counts. For every bucket t >= window,
/// the baseline is buckets t-window..t-1 (mean, sample standard deviation).
/// A bucket is flagged when count >= min_hits and either z >= z_thresh, or
/// the baseline is flat and the count rises above it.
std::vector<Flag> zscore_flags(const BucketSeries& series, std::size_t window, double z_thresh,
                               std::uint64_t min_hits);

/// Class-mix shift: JSD between the bucket's distribution over the five
/// classes (Neutral included) and the pooled distribution of the trailing
/// window. Buckets holding fewer than min_total posts are never flagged.
/// `classes` must hold aligned post-count series for the five classes.
std::vector<Flag> shift_flags(std::span<const BucketSeries> classes, std::size_t window,
                              double jsd_thresh, std::uint64_t min_total);

struct DeviationReport {
    std::string user_id;
    DetectorConfig config;
    std::vector<Flag> flags;  // sorted by (bucket, signal, class)
};

/// Sorts flags, fills severity and rejects duplicate (bucket, signal, class)
/// entries with Error{kInternal, "duplicate-flag"}.
DeviationReport build_report(std::string user_id, std::vector<Flag> flags, const DetectorConfig& config);

/// Runs both detectors over one user's analyzed series.
DeviationReport detect_user(std::string user_id, std::span<const BucketSeries> series,
                            const DetectorConfig& config);

/// Deterministic JSON for a set of reports.
std::string reports_json(std::span<const DeviationReport> reports, std::string_view granularity,
                         std::string_view analysis_hash);

}  // namespace facewall
