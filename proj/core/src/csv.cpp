#include "facewall/csv.hpp"

namespace facewall::csv {

void Reader::skip_to_line_end() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
}

bool Reader::next(Record& record) {
    // Skip blank lines.
    while (pos_ < text_.size()) {
        if (text_[pos_] == '\n') {
            ++pos_;
            ++line_;
        } else if (text_[pos_] == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') {
            pos_ += 2;
            ++line_;
        } else {
            break;
        }
    }
    if (pos_ >= text_.size()) return false;

    record.line = line_;
    record.fields.clear();
    record.malformed = false;

    std::string current;
    bool quoted = false;
    bool after_quote = false;  // closing quote seen, expecting delimiter or EOL
    bool field_started = false;

    auto finish_line = [&] {
        if (pos_ < text_.size() && text_[pos_] == '\n') {
            ++pos_;
            ++line_;
        }
    };

    while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (quoted) {
            if (c == '"') {
                if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
                    current += '"';
                    pos_ += 2;
                    continue;
                }
                quoted = false;
                after_quote = true;
                ++pos_;
                continue;
            }
            if (c == '\n') ++line_;
            current += c;
            ++pos_;
            continue;
        }
        if (c == ',') {
            record.fields.push_back(std::move(current));
            current.clear();
            after_quote = false;
            field_started = false;
            ++pos_;
            continue;
        }
        if (c == '\n' || (c == '\r' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n')) {
            if (c == '\r') ++pos_;
            record.fields.push_back(std::move(current));
            finish_line();
            return true;
        }
        if (after_quote) {
            record.malformed = true;
            skip_to_line_end();
            finish_line();
            return true;
        }
        if (c == '"') {
            if (field_started) {
                record.malformed = true;
                skip_to_line_end();
                finish_line();
                return true;
            }
            quoted = true;
            field_started = true;
            ++pos_;
            continue;
        }
        field_started = true;
        current += c;
        ++pos_;
    }

    if (quoted) {
        record.malformed = true;
        return true;
    }
    record.fields.push_back(std::move(current));
    return true;
}

std::optional<std::vector<std::string>> split_record(std::string_view row) {
    while (!row.empty() && (row.back() == '\n' || row.back() == '\r')) row.remove_suffix(1);
    Reader reader(row);
    Record record;
    if (!reader.next(record)) return std::vector<std::string>{};
    if (record.malformed) return std::nullopt;
    // Anything left over means the row held more than one record.
    Record extra;
    if (reader.next(extra)) return std::nullopt;
    return std::move(record.fields);
}

std::string field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
    std::string out;
    out.reserve(value.size() + 2);
    out += '"';
    for (const char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace facewall::csv
