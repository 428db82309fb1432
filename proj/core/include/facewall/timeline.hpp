#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facewall/classifier.hpp"
#include "facewall/timestamp.hpp"

namespace facewall {

enum class Granularity { kWeek, kMonth, kQuarter, kYear };

std::string_view to_string(Granularity g);
std::optional<Granularity> parse_granularity(std::string_view name);

/// Start (UTC midnight) of the period containing `ts`. Weeks start Monday.
std::chrono::sys_days bucket_floor(Timestamp ts, Granularity g);
std::chrono::sys_days next_bucket(std::chrono::sys_days start, Granularity g);

struct TimeBucket {
    Granularity granularity = Granularity::kMonth;
    std::chrono::sys_days start;
    std::size_t index = 0;
};

/// What the timeline needs to know about one classified post.
struct LabeledPost {
    Timestamp timestamp;
    LabelSet labels;
    /// Lexicon word/emoticon occurrences per class, for occurrence series.
    std::map<EmotionClass, std::uint64_t> class_hits;
    std::uint64_t token_count = 0;  // pruned tokens
};

struct Bucket {
    TimeBucket id;
    std::vector<std::size_t> members;  // indices into the bucketized posts
};

/// Contiguous, zero-filled range from the first to the last post.
struct BucketRange {
    Granularity granularity = Granularity::kMonth;
    std::vector<Bucket> buckets;
};

BucketRange bucketize(std::span<const LabeledPost> posts, Granularity g);

/// Zero-filled range covering [first, last] bucket starts inclusive.
BucketRange empty_range(std::chrono::sys_days first, std::chrono::sys_days last, Granularity g);

enum class SeriesClass { kHappy, kSad, kLove, kDisappointment, kNeutral, kVolume };

inline constexpr std::array<SeriesClass, 6> kAllSeriesClasses = {
    SeriesClass::kHappy,   SeriesClass::kSad,     SeriesClass::kLove,
    SeriesClass::kDisappointment, SeriesClass::kNeutral, SeriesClass::kVolume};

SeriesClass series_class(EmotionClass c);
std::optional<EmotionClass> emotion_class(SeriesClass c);
std::string_view to_string(SeriesClass c);
std::optional<SeriesClass> parse_series_class(std::string_view name);

/// Posts: how many posts carry the class. Occurrences: how many lexicon
/// hits of the class the bucket's posts contain.
enum class SeriesMeasure { kPosts, kOccurrences };

std::string_view to_string(SeriesMeasure m);
std::optional<SeriesMeasure> parse_series_measure(std::string_view name);

struct SeriesPoint {
    std::chrono::sys_days start;
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    double proportion = 0.0;  // count / total, 0 when total == 0

    bool operator==(const SeriesPoint&) const = default;
};

struct BucketSeries {
    SeriesClass cls = SeriesClass::kVolume;
    SeriesMeasure measure = SeriesMeasure::kPosts;
    std::vector<SeriesPoint> points;

    std::vector<double> counts() const;
};

BucketSeries emotion_series(const BucketRange& range, std::span<const LabeledPost> posts,
                            SeriesClass cls, SeriesMeasure measure = SeriesMeasure::kPosts);

/// count / total with exactly six decimals, ties rounded half to even.
std::string format_proportion(std::uint64_t count, std::uint64_t total);

/// Header `bucket_start,class,count,total,proportion`; one block per series
/// in the given order.
std::string series_csv(std::span<const BucketSeries> series);

/// Inverse of series_csv. Throws Error{kStore, "bad-series"} on malformed
/// input.
std::vector<BucketSeries> parse_series_csv(std::string_view text,
                                           SeriesMeasure measure = SeriesMeasure::kPosts);

}  // namespace facewall
