#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace facewall {

enum class TokenKind : std::uint8_t { kWord, kEmoticon, kUrl, kMention, kNumber, kPunct };

std::string_view to_string(TokenKind kind);

/// Half-open range of code-point offsets into the NFC-normalized text.
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;
    bool operator==(const Span&) const = default;
};

struct Token {
    TokenKind kind = TokenKind::kWord;
    std::string surface;  // WORD case-folded, everything else verbatim
    Span span;

    bool operator==(const Token&) const = default;
};

/// Emoticons matched verbatim and case-sensitively, longest entry first.
class EmoticonTable {
public:
    EmoticonTable() = default;

    /// Entries are NFC-normalized; duplicates collapse. Throws
    /// Error{kInput, "bad-emoticon"} for empty entries or entries holding
    /// whitespace.
    explicit EmoticonTable(const std::vector<std::string>& entries);

    /// Entries in matching order: longest first, ties by code point order.
    const std::vector<std::string>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Length in code points of the longest entry matching at `pos`; 0 if none.
    std::size_t match(std::u32string_view text, std::size_t pos) const;

private:
    std::vector<std::string> entries_;
    std::vector<std::u32string> patterns_;
    std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

/// Emoticon-aware scan of NFC-normalized text. At each position the first
/// matching rule wins: EMOTICON, URL, MENTION, NUMBER, WORD, PUNCT (one code
/// point). Whitespace separates tokens and produces none.
std::vector<Token> tokenize(std::string_view text, const EmoticonTable& emoticons);

/// Drops URLs, mentions, punctuation and the articles "a", "an", "the".
std::vector<Token> prune(std::vector<Token> tokens);

}  // namespace facewall
