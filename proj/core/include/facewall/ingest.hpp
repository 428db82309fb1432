#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "facewall/timestamp.hpp"

namespace facewall {

enum class CorpusFormat { kJsonl, kCsv };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

/// One collected wall post.
struct RawPost {
    std::string user_id;  // trimmed, never empty
    Timestamp timestamp;  // UTC
    std::string text;     // valid UTF-8, may be empty
    std::optional<std::string> source;

    bool operator==(const RawPost&) const = default;
};

/// Why a single record was refused: "missing-field:<name>", "bad-timestamp"
/// or "malformed".
struct ParseRejection {
    std::string reason;
    bool operator==(const ParseRejection&) const = default;
};

using ParsedRecord = std::variant<RawPost, ParseRejection>;

/// Column positions for CSV input, resolved from the header row.
struct CsvLayout {
    std::size_t user_id = 0;
    std::size_t timestamp = 1;
    std::size_t text = 2;
    std::optional<std::size_t> source;

    /// nullopt when one of user_id, timestamp, text is missing from the header.
    static std::optional<CsvLayout> from_header(const std::vector<std::string>& header);
};

/// Parses one JSONL line or one CSV row (columns per `layout`).
ParsedRecord parse_post_record(std::string_view raw, CorpusFormat format,
                               const CsvLayout& layout = {});

ParsedRecord parse_csv_fields(const std::vector<std::string>& fields, const CsvLayout& layout);

struct Rejection {
    std::size_t line = 0;  // 1-based physical line of the record
    std::string reason;
    bool operator==(const Rejection&) const = default;
};

struct CorpusBatch {
    std::vector<RawPost> posts;
    std::vector<Rejection> rejected;
    std::size_t duplicates_dropped = 0;
    std::size_t total_records = 0;
};

/// Identity used for deduplication: user, instant and a SHA-256 of the text.
std::string dedupe_key(const RawPost& post);

/// Loads a whole corpus file, keeping the first occurrence of each dedupe key.
/// Throws Error{kInput, "io"} when the file cannot be read and
/// Error{kInput, "bad-header"} when a CSV header lacks a required column.
CorpusBatch load_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Same as load_corpus over in-memory content.
CorpusBatch parse_corpus(std::string_view content, CorpusFormat format);

}  // namespace facewall
