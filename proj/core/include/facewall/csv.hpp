#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace facewall::csv {

/// One logical CSV record. `line` is the 1-based physical line where the
/// record starts; quoted fields may span several lines.
struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
    bool malformed = false;
};

/// RFC 4180 reader: comma delimiter, double-quote quoting with "" escapes,
/// LF or CRLF line endings. Blank lines are skipped.
class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    /// Returns false once the input is exhausted.
    bool next(Record& record);

private:
    void skip_to_line_end();

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
};

/// Splits a single record; nullopt when it is malformed.
std::optional<std::vector<std::string>> split_record(std::string_view row);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string field(std::string_view value);

}  // namespace facewall::csv
