#include "facewall/ingest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "facewall/csv.hpp"
#include "facewall/error.hpp"
#include "facewall/hash.hpp"
#include "facewall/unicode.hpp"

namespace facewall {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
    constexpr std::string_view kSpace = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(kSpace);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(kSpace);
    return s.substr(first, last - first + 1);
}

ParseRejection reject(std::string reason) { return ParseRejection{std::move(reason)}; }

ParsedRecord build(std::string_view user_id, std::string_view timestamp, std::string text,
                   std::optional<std::string> source) {
    const auto user = trim(user_id);
    if (user.empty()) return reject("missing-field:user_id");
    const auto ts = parse_rfc3339(trim(timestamp));
    if (!ts) return reject("bad-timestamp");
    return RawPost{std::string(user), *ts, std::move(text), std::move(source)};
}

ParsedRecord parse_json_line(std::string_view raw) {
    json object;
    try {
        object = json::parse(raw.begin(), raw.end());
    } catch (const json::parse_error&) {
        return reject("malformed");
    }
    if (!object.is_object()) return reject("malformed");

    for (const char* name : {"user_id", "timestamp", "text"}) {
        const auto it = object.find(name);
        if (it == object.end() || it->is_null()) return reject(std::string("missing-field:") + name);
        if (!it->is_string()) return reject("malformed");
    }
    std::optional<std::string> source;
    if (const auto it = object.find("source"); it != object.end() && !it->is_null()) {
        if (!it->is_string()) return reject("malformed");
        source = it->get<std::string>();
    }
    return build(object["user_id"].get_ref<const std::string&>(),
                 object["timestamp"].get_ref<const std::string&>(),
                 object["text"].get<std::string>(), std::move(source));
}

}  // namespace

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
    if (name == "jsonl") return CorpusFormat::kJsonl;
    if (name == "csv") return CorpusFormat::kCsv;
    return std::nullopt;
}

std::optional<CsvLayout> CsvLayout::from_header(const std::vector<std::string>& header) {
    std::optional<std::size_t> user, ts, text, source;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string_view name = trim(header[i]);
        if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.remove_prefix(3);
        if (name == "user_id" && !user) user = i;
        else if (name == "timestamp" && !ts) ts = i;
        else if (name == "text" && !text) text = i;
        else if (name == "source" && !source) source = i;
    }
    if (!user || !ts || !text) return std::nullopt;
    return CsvLayout{*user, *ts, *text, source};
}

ParsedRecord parse_csv_fields(const std::vector<std::string>& fields, const CsvLayout& layout) {
    for (const auto& f : fields) {
        if (!unicode::is_valid_utf8(f)) return reject("malformed");
    }
    if (layout.user_id >= fields.size()) return reject("missing-field:user_id");
    if (layout.timestamp >= fields.size() || trim(fields[layout.timestamp]).empty()) {
        return reject("missing-field:timestamp");
    }
    if (layout.text >= fields.size()) return reject("missing-field:text");
    std::optional<std::string> source;
    if (layout.source && *layout.source < fields.size() && !fields[*layout.source].empty()) {
        source = fields[*layout.source];
    }
    return build(fields[layout.user_id], fields[layout.timestamp], fields[layout.text],
                 std::move(source));
}

ParsedRecord parse_post_record(std::string_view raw, CorpusFormat format, const CsvLayout& layout) {
    if (format == CorpusFormat::kJsonl) return parse_json_line(raw);
    auto fields = csv::split_record(raw);
    if (!fields) return reject("malformed");
    return parse_csv_fields(*fields, layout);
}

std::string dedupe_key(const RawPost& post) {
    std::string key = post.user_id;
    key += '\x1f';
    key += format_rfc3339(post.timestamp);
    key += '\x1f';
    key += sha256_hex(post.text);
    return key;
}

CorpusBatch parse_corpus(std::string_view content, CorpusFormat format) {
    CorpusBatch batch;
    std::unordered_set<std::string> seen;

    auto accept = [&](std::size_t line, ParsedRecord parsed) {
        ++batch.total_records;
        if (auto* rejection = std::get_if<ParseRejection>(&parsed)) {
            batch.rejected.push_back({line, std::move(rejection->reason)});
            return;
        }
        auto& post = std::get<RawPost>(parsed);
        if (!seen.insert(dedupe_key(post)).second) {
            ++batch.duplicates_dropped;
            return;
        }
        batch.posts.push_back(std::move(post));
    };

    if (format == CorpusFormat::kJsonl) {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < content.size()) {
            auto end = content.find('\n', pos);
            if (end == std::string_view::npos) end = content.size();
            std::string_view line = content.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
            if (trim(line).empty()) continue;
            accept(line_no, parse_json_line(line));
        }
        return batch;
    }

    csv::Reader reader(content);
    csv::Record record;
    if (!reader.next(record)) return batch;
    const auto layout = record.malformed ? std::nullopt : CsvLayout::from_header(record.fields);
    if (!layout) {
        fail(ErrorKind::kInput, "bad-header", "CSV header must name user_id, timestamp and text");
    }
    while (reader.next(record)) {
        if (record.malformed) {
            accept(record.line, ParseRejection{"malformed"});
        } else {
            accept(record.line, parse_csv_fields(record.fields, *layout));
        }
    }
    return batch;
}

CorpusBatch load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::kInput, "io", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) fail(ErrorKind::kInput, "io", "read failed for " + path.string());
    return parse_corpus(buffer.str(), format);
}

}  // namespace facewall
