#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "facewall/lexer.hpp"

namespace facewall {

inline constexpr std::size_t kDefaultNgramOrder = 3;
inline constexpr std::size_t kMaxNgramOrder = 6;

/// A token surface tagged with its kind, so WORD "x" and EMOTICON "x" differ.
struct Gram {
    std::string surface;
    TokenKind kind = TokenKind::kWord;

    auto operator<=>(const Gram&) const = default;
    bool operator==(const Gram&) const = default;
};

/// Ordered by order n first, then lexicographically by grams.
struct NGramKey {
    std::vector<Gram> grams;

    std::size_t n() const { return grams.size(); }

    std::strong_ordering operator<=>(const NGramKey& other) const {
        if (auto c = n() <=> other.n(); c != 0) return c;
        return grams <=> other.grams;
    }
    bool operator==(const NGramKey&) const = default;
};

NGramKey make_key(std::span<const Token> window);

/// Gram surfaces joined by U+241F SYMBOL FOR UNIT SEPARATOR.
std::string joined_surface(const NGramKey& key);

using NGramCounts = std::map<NGramKey, std::uint64_t>;

/// All contiguous windows of length n, without padding. Throws
/// Error{kUsage, "bad-n"} when n == 0.
NGramCounts extract_ngrams(std::span<const Token> tokens, std::size_t n);

struct NGramProfile {
    std::string owner;
    std::string bucket = "all";
    NGramCounts counts;  // no zero entries
    std::uint64_t post_count = 0;

    bool operator==(const NGramProfile&) const = default;
};

/// Adds the n-grams of one pruned post for every order 1..n_max.
NGramProfile& accumulate(NGramProfile& profile, std::span<const Token> tokens, std::size_t n_max);

/// Pointwise sum. Throws Error{kInternal, "owner-mismatch"} or
/// Error{kInternal, "bucket-mismatch"} when the scopes differ.
NGramProfile merge_profiles(NGramProfile a, const NGramProfile& b);

/// CSV export: header `n,gram,count`, rows in key order.
std::string ngram_csv(const NGramCounts& counts);

}  // namespace facewall
