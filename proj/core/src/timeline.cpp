#include "facewall/timeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "facewall/csv.hpp"
#include "facewall/error.hpp"

namespace facewall {

namespace {

using namespace std::chrono;

std::uint64_t parse_u64(const std::string& text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) fail(ErrorKind::kStore, "bad-series", "bad integer " + text);
    return value;
}

}  // namespace

std::string_view to_string(Granularity g) {
    switch (g) {
        case Granularity::kWeek: return "week";
        case Granularity::kMonth: return "month";
        case Granularity::kQuarter: return "quarter";
        case Granularity::kYear: return "year";
    }
    return "?";
}

std::optional<Granularity> parse_granularity(std::string_view name) {
    for (const auto g : {Granularity::kWeek, Granularity::kMonth, Granularity::kQuarter, Granularity::kYear}) {
        if (name == to_string(g)) return g;
    }
    return std::nullopt;
}

sys_days bucket_floor(Timestamp ts, Granularity g) {
    const sys_days day = floor<days>(ts);
    const year_month_day ymd{day};
    switch (g) {
        case Granularity::kWeek: return day - (weekday{day} - Monday);
        case Granularity::kMonth: return sys_days{ymd.year() / ymd.month() / 1};
        case Granularity::kQuarter: {
            const unsigned m = static_cast<unsigned>(ymd.month());
            return sys_days{ymd.year() / month{(m - 1) / 3 * 3 + 1} / 1};
        }
        case Granularity::kYear: return sys_days{ymd.year() / January / 1};
    }
    return day;
}

sys_days next_bucket(sys_days start, Granularity g) {
    const year_month_day ymd{start};
    switch (g) {
        case Granularity::kWeek: return start + weeks{1};
        case Granularity::kMonth: return sys_days{ymd + months{1}};
        case Granularity::kQuarter: return sys_days{ymd + months{3}};
        case Granularity::kYear: return sys_days{ymd + years{1}};
    }
    return start;
}

BucketRange empty_range(sys_days first, sys_days last, Granularity g) {
    BucketRange range;
    range.granularity = g;
    for (sys_days d = first; d <= last; d = next_bucket(d, g)) {
        range.buckets.push_back(Bucket{TimeBucket{g, d, range.buckets.size()}, {}});
    }
    return range;
}

BucketRange bucketize(std::span<const LabeledPost> posts, Granularity g) {
    if (posts.empty()) return BucketRange{g, {}};
    const auto [lo, hi] = std::minmax_element(posts.begin(), posts.end(), [](const auto& a, const auto& b) {
        return a.timestamp < b.timestamp;
    });
    BucketRange range = empty_range(bucket_floor(lo->timestamp, g), bucket_floor(hi->timestamp, g), g);

    std::vector<sys_days> starts;
    starts.reserve(range.buckets.size());
    for (const auto& b : range.buckets) starts.push_back(b.id.start);
    for (std::size_t i = 0; i < posts.size(); ++i) {
        const auto start = bucket_floor(posts[i].timestamp, g);
        const auto it = std::lower_bound(starts.begin(), starts.end(), start);
        range.buckets[static_cast<std::size_t>(it - starts.begin())].members.push_back(i);
    }
    return range;
}

SeriesClass series_class(EmotionClass c) {
    switch (c) {
        case EmotionClass::kHappy: return SeriesClass::kHappy;
        case EmotionClass::kSad: return SeriesClass::kSad;
        case EmotionClass::kLove: return SeriesClass::kLove;
        case EmotionClass::kDisappointment: return SeriesClass::kDisappointment;
        case EmotionClass::kNeutral: return SeriesClass::kNeutral;
    }
    return SeriesClass::kVolume;
}

std::optional<EmotionClass> emotion_class(SeriesClass c) {
    switch (c) {
        case SeriesClass::kHappy: return EmotionClass::kHappy;
        case SeriesClass::kSad: return EmotionClass::kSad;
        case SeriesClass::kLove: return EmotionClass::kLove;
        case SeriesClass::kDisappointment: return EmotionClass::kDisappointment;
        case SeriesClass::kNeutral: return EmotionClass::kNeutral;
        case SeriesClass::kVolume: return std::nullopt;
    }
    return std::nullopt;
}

std::string_view to_string(SeriesClass c) {
    if (const auto e = emotion_class(c)) return to_string(*e);
    return "volume";
}

std::optional<SeriesClass> parse_series_class(std::string_view name) {
    auto same = [](std::string_view a, std::string_view b) {
        return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
                   return std::tolower(static_cast<unsigned char>(x)) == y;
               });
    };
    for (const auto c : kAllSeriesClasses) {
        if (same(name, to_string(c))) return c;
    }
    return std::nullopt;
}

std::string_view to_string(SeriesMeasure m) {
    return m == SeriesMeasure::kPosts ? "posts" : "occurrences";
}

std::optional<SeriesMeasure> parse_series_measure(std::string_view name) {
    if (name == "posts") return SeriesMeasure::kPosts;
    if (name == "occurrences") return SeriesMeasure::kOccurrences;
    return std::nullopt;
}

std::vector<double> BucketSeries::counts() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(static_cast<double>(p.count));
    return out;
}

BucketSeries emotion_series(const BucketRange& range, std::span<const LabeledPost> posts,
                            SeriesClass cls, SeriesMeasure measure) {
    BucketSeries series{cls, measure, {}};
    const auto emotion = emotion_class(cls);
    series.points.reserve(range.buckets.size());
    for (const auto& bucket : range.buckets) {
        SeriesPoint point{bucket.id.start, 0, 0, 0.0};
        for (const auto i : bucket.members) {
            const auto& post = posts[i];
            if (measure == SeriesMeasure::kPosts) {
                ++point.total;
                if (!emotion || post.labels.count(*emotion)) ++point.count;
            } else {
                point.total += post.token_count;
                if (!emotion) {
                    point.count += post.token_count;
                } else if (const auto it = post.class_hits.find(*emotion); it != post.class_hits.end()) {
                    point.count += it->second;
                }
            }
        }
        point.proportion = point.total == 0 ? 0.0
                                            : static_cast<double>(point.count) /
                                                  static_cast<double>(point.total);
        series.points.push_back(point);
    }
    return series;
}

std::string format_proportion(std::uint64_t count, std::uint64_t total) {
    if (total == 0) return "0.000000";
    constexpr std::uint64_t kScale = 1'000'000;
    // Whole part first so that the scaled remainder stays below total * 10^6.
    std::uint64_t whole = count / total;
    const std::uint64_t rem = count % total;
    std::uint64_t frac = rem * kScale / total;
    const std::uint64_t r = rem * kScale % total;
    if (2 * r > total || (2 * r == total && (frac & 1) != 0)) ++frac;
    if (frac == kScale) {
        ++whole;
        frac = 0;
    }
    const std::string digits = std::to_string(frac);
    return std::to_string(whole) + "." + std::string(6 - digits.size(), '0') + digits;
}

std::string series_csv(std::span<const BucketSeries> series) {
    std::string out = "bucket_start,class,count,total,proportion\n";
    for (const auto& s : series) {
        const std::string name(to_string(s.cls));
        for (const auto& p : s.points) {
            out += format_date(p.start);
            out += ',';
            out += name;
            out += ',';
            out += std::to_string(p.count);
            out += ',';
            out += std::to_string(p.total);
            out += ',';
            out += format_proportion(p.count, p.total);
            out += '\n';
        }
    }
    return out;
}

std::vector<BucketSeries> parse_series_csv(std::string_view text, SeriesMeasure measure) {
    csv::Reader reader(text);
    csv::Record record;
    if (!reader.next(record) || record.malformed ||
        record.fields != std::vector<std::string>{"bucket_start", "class", "count", "total", "proportion"}) {
        fail(ErrorKind::kStore, "bad-series", "missing series header");
    }
    std::vector<BucketSeries> out;
    while (reader.next(record)) {
        if (record.malformed || record.fields.size() != 5) {
            fail(ErrorKind::kStore, "bad-series", "line " + std::to_string(record.line));
        }
        const auto start = parse_date(record.fields[0]);
        const auto cls = parse_series_class(record.fields[1]);
        if (!start || !cls) fail(ErrorKind::kStore, "bad-series", "line " + std::to_string(record.line));
        if (out.empty() || out.back().cls != *cls) out.push_back(BucketSeries{*cls, measure, {}});
        SeriesPoint p{*start, parse_u64(record.fields[2]), parse_u64(record.fields[3]), 0.0};
        p.proportion = p.total == 0 ? 0.0 : static_cast<double>(p.count) / static_cast<double>(p.total);
        out.back().points.push_back(p);
    }
    return out;
}

}  // namespace facewall
