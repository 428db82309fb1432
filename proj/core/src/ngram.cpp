#include "facewall/ngram.hpp"

#include "facewall/csv.hpp"
#include "facewall/error.hpp"

namespace facewall {

namespace {

constexpr std::string_view kUnitSeparator = "\xE2\x90\x9F";  // U+241F

void check_order(std::size_t n) {
    if (n == 0 || n > kMaxNgramOrder) {
        fail(ErrorKind::kUsage, "bad-n", "n-gram order must be in 1.." + std::to_string(kMaxNgramOrder));
    }
}

void add_windows(NGramCounts& counts, std::span<const Token> tokens, std::size_t n) {
    if (tokens.size() < n) return;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++counts[make_key(tokens.subspan(i, n))];
    }
}

}  // namespace

NGramKey make_key(std::span<const Token> window) {
    NGramKey key;
    key.grams.reserve(window.size());
    for (const auto& token : window) key.grams.push_back(Gram{token.surface, token.kind});
    return key;
}

std::string joined_surface(const NGramKey& key) {
    std::string out;
    for (std::size_t i = 0; i < key.grams.size(); ++i) {
        if (i > 0) out += kUnitSeparator;
        out += key.grams[i].surface;
    }
    return out;
}

NGramCounts extract_ngrams(std::span<const Token> tokens, std::size_t n) {
    if (n == 0) fail(ErrorKind::kUsage, "bad-n", "n must be at least 1");
    NGramCounts counts;
    add_windows(counts, tokens, n);
    return counts;
}

NGramProfile& accumulate(NGramProfile& profile, std::span<const Token> tokens, std::size_t n_max) {
    check_order(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) add_windows(profile.counts, tokens, n);
    ++profile.post_count;
    return profile;
}

NGramProfile merge_profiles(NGramProfile a, const NGramProfile& b) {
    if (a.owner != b.owner) fail(ErrorKind::kInternal, "owner-mismatch", a.owner + " vs " + b.owner);
    if (a.bucket != b.bucket) {
        fail(ErrorKind::kInternal, "bucket-mismatch", a.bucket + " vs " + b.bucket);
    }
    for (const auto& [key, count] : b.counts) a.counts[key] += count;
    a.post_count += b.post_count;
    return a;
}

std::string ngram_csv(const NGramCounts& counts) {
    std::string out = "n,gram,count\n";
    for (const auto& [key, count] : counts) {
        out += std::to_string(key.n());
        out += ',';
        out += csv::field(joined_surface(key));
        out += ',';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

}  // namespace facewall
