#include "facewall/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "facewall/error.hpp"

namespace facewall {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

constexpr const char* kPostsFile = "posts.jsonl";
constexpr const char* kManifestFile = "manifest.json";

[[noreturn]] void store_error(std::string_view code, const std::string& detail) {
    fail(ErrorKind::kStore, code, detail);
}

Manifest parse_manifest(const std::string& text, const fs::path& path) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        store_error("store-corrupt", path.string() + ": " + e.what());
    }
    Manifest m;
    try {
        m.schema_version = doc.at("schema_version").get<int>();
        if (m.schema_version != kStoreSchemaVersion) {
            store_error("schema-mismatch", "store schema " + std::to_string(m.schema_version) +
                                               ", expected " + std::to_string(kStoreSchemaVersion));
        }
        m.record_count = doc.at("record_count").get<std::uint64_t>();
        if (auto h = doc.find("config_hash"); h != doc.end() && !h->is_null()) m.config_hash = h->get<std::string>();
    } catch (const json::exception& e) {
        store_error("schema-mismatch", path.string() + ": " + e.what());
    }
    return m;
}

std::uint64_t count_lines(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return 0;
    std::uint64_t lines = 0;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        lines += static_cast<std::uint64_t>(std::count(buf, buf + in.gcount(), '\n'));
    }
    return lines;
}

}  // namespace

StoreLock::StoreLock(const fs::path& root) {
    const auto path = root / ".lock";
    fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) store_error("store-io", "cannot open " + path.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        store_error("store-locked", "another process holds " + path.string());
    }
}

StoreLock::~StoreLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

StoreLock::StoreLock(StoreLock&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) store_error("store-io", "cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) store_error("store-io", "cannot create " + path.parent_path().string());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) store_error("store-io", "write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) store_error("store-io", "rename failed for " + path.string());
}

std::string post_to_json(const RawPost& post) {
    json record = {{"user_id", post.user_id},
                   {"timestamp", format_rfc3339(post.timestamp)},
                   {"text", post.text}};
    if (post.source) record["source"] = *post.source;
    return record.dump();
}

bool Store::exists(const fs::path& root) { return fs::is_regular_file(root / kManifestFile); }

Store Store::open(const fs::path& root, bool create) {
    std::error_code ec;
    if (!fs::is_directory(root, ec)) {
        if (!create) store_error("store-missing", "no store at " + root.string());
        fs::create_directories(root, ec);
        if (ec) store_error("store-io", "cannot create " + root.string());
    }
    StoreLock lock(root);
    const auto manifest_path = root / kManifestFile;
    if (!fs::exists(manifest_path)) {
        if (!create) store_error("store-missing", "no manifest in " + root.string());
        if (fs::exists(root / kPostsFile) && count_lines(root / kPostsFile) > 0) {
            store_error("store-corrupt", "post log without manifest in " + root.string());
        }
        Store store(root, std::move(lock), Manifest{});
        write_file_atomic(root / kPostsFile, "");
        store.write_manifest();
        return store;
    }
    auto manifest = parse_manifest(read_file(manifest_path), manifest_path);
    const auto lines = count_lines(root / kPostsFile);
    if (lines != manifest.record_count) {
        store_error("store-corrupt", "manifest counts " + std::to_string(manifest.record_count) +
                                         " records, log holds " + std::to_string(lines));
    }
    return Store(root, std::move(lock), std::move(manifest));
}

Store::Store(fs::path root, StoreLock lock, Manifest manifest)
    : root_(std::move(root)), lock_(std::move(lock)), manifest_(std::move(manifest)) {}

void Store::write_manifest() const {
    json doc = {{"schema_version", manifest_.schema_version},
                {"record_count", manifest_.record_count},
                {"config_hash", manifest_.config_hash ? json(*manifest_.config_hash) : json(nullptr)}};
    write_file_atomic(root_ / kManifestFile, doc.dump(2) + "\n");
}

void Store::load_keys() {
    if (keys_) return;
    keys_.emplace();
    for (const auto& post : read_posts()) keys_->insert(dedupe_key(post));
}

AppendReceipt Store::append(std::span<const RawPost> posts) {
    load_keys();
    AppendReceipt receipt;
    std::string lines;
    for (const auto& post : posts) {
        if (!keys_->insert(dedupe_key(post)).second) {
            ++receipt.skipped;
            continue;
        }
        lines += post_to_json(post);
        lines += '\n';
        ++receipt.written;
    }
    if (receipt.written > 0) {
        const auto path = root_ / kPostsFile;
        std::ofstream out(path, std::ios::binary | std::ios::app);
        out.write(lines.data(), static_cast<std::streamsize>(lines.size()));
        out.flush();
        if (!out) store_error("store-io", "append failed for " + path.string());
        manifest_.record_count += receipt.written;
        write_manifest();
    }
    receipt.record_count = manifest_.record_count;
    return receipt;
}

std::vector<RawPost> Store::read_posts() const {
    const auto content = read_file(root_ / kPostsFile);
    std::vector<RawPost> posts;
    posts.reserve(manifest_.record_count);
    std::size_t pos = 0;
    std::size_t line = 0;
    while (pos < content.size()) {
        auto end = content.find('\n', pos);
        if (end == std::string::npos) end = content.size();
        ++line;
        auto parsed = parse_post_record(std::string_view(content).substr(pos, end - pos), CorpusFormat::kJsonl);
        if (auto* post = std::get_if<RawPost>(&parsed)) {
            posts.push_back(std::move(*post));
        } else {
            store_error("store-corrupt", "bad record at posts.jsonl:" + std::to_string(line));
        }
        pos = end + 1;
    }
    return posts;
}

void Store::set_config_hash(std::string hash) {
    if (manifest_.config_hash == hash) return;
    manifest_.config_hash = std::move(hash);
    write_manifest();
}

std::string Store::encode_component(std::string_view user_id) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (std::size_t i = 0; i < user_id.size(); ++i) {
        const auto c = static_cast<unsigned char>(user_id[i]);
        const bool plain = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                           c == '-' || (c == '.' && i > 0);
        if (plain) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0x0f];
        }
    }
    return out;
}

fs::path Store::derived_dir(std::string_view user_id, std::string_view config_hash) const {
    return root_ / "derived" / encode_component(user_id) / std::string(config_hash);
}

fs::path Store::aggregate_dir(std::string_view config_hash) const {
    return root_ / "derived" / std::string(kAllUsersDir) / std::string(config_hash);
}

}  // namespace facewall
