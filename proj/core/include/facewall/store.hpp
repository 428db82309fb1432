#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "facewall/ingest.hpp"

namespace facewall {

inline constexpr int kStoreSchemaVersion = 1;

/// Reserved derived-cache directory for all-users aggregates. User ids are
/// percent-encoded with '_' escaped, so no user can map onto it.
inline constexpr std::string_view kAllUsersDir = "_all";

struct Manifest {
    int schema_version = kStoreSchemaVersion;
    std::uint64_t record_count = 0;
    std::optional<std::string> config_hash;  // latest analysis, if any

    bool operator==(const Manifest&) const = default;
};

struct AppendReceipt {
    std::size_t written = 0;
    std::size_t skipped = 0;  // already present in the store
    std::uint64_t record_count = 0;
};

/// Advisory exclusive lock on `<root>/.lock`, held for the object's lifetime.
class StoreLock {
public:
    explicit StoreLock(const std::filesystem::path& root);
    ~StoreLock();
    StoreLock(StoreLock&& other) noexcept;
    StoreLock& operator=(StoreLock&&) = delete;
    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    int fd_ = -1;
};

/// Append-only post log with a manifest and a derived-artifact cache:
///
///   <root>/posts.jsonl      normalized records, one JSON object per line
///   <root>/manifest.json    schema version, record count, latest analysis
///   <root>/derived/<user>/<config hash>/...
///
/// Exactly one Store per root at a time; the constructor takes the lock.
/// Store errors are Error{kStore, ...} with codes "store-missing",
/// "store-locked", "store-io", "schema-mismatch" or "store-corrupt".
class Store {
public:
    /// Opens an existing store, or creates an empty one when `create` is set.
    static Store open(const std::filesystem::path& root, bool create);

    /// True when `root` holds a manifest.
    static bool exists(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }
    const Manifest& manifest() const { return manifest_; }

    /// Appends posts whose dedupe key is not yet stored, in order. Existing
    /// records are never rewritten; with nothing new the files stay untouched.
    AppendReceipt append(std::span<const RawPost> posts);

    std::vector<RawPost> read_posts() const;

    void set_config_hash(std::string hash);

    std::filesystem::path derived_dir(std::string_view user_id, std::string_view config_hash) const;
    std::filesystem::path aggregate_dir(std::string_view config_hash) const;

    /// Percent-encodes everything outside [A-Za-z0-9.-] plus a leading '.'.
    static std::string encode_component(std::string_view user_id);

private:
    Store(std::filesystem::path root, StoreLock lock, Manifest manifest);

    void write_manifest() const;
    void load_keys();

    std::filesystem::path root_;
    StoreLock lock_;
    Manifest manifest_;
    std::optional<std::unordered_set<std::string>> keys_;
};

std::string read_file(const std::filesystem::path& path);

/// Writes via a temporary sibling and rename. Throws Error{kStore, "store-io"}.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Normalized single-line JSON form of a post, as stored in posts.jsonl.
std::string post_to_json(const RawPost& post);

}  // namespace facewall
