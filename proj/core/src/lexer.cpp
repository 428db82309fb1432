#include "facewall/lexer.hpp"

#include <algorithm>

#include "facewall/error.hpp"
#include "facewall/unicode.hpp"

namespace facewall {

namespace {

constexpr std::size_t kMaxMentionLength = 50;

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }
bool is_hyphen(char32_t c) { return c == U'-' || c == U'‐'; }

bool is_mention_char(char32_t c) {
    return unicode::is_letter(c) || unicode::is_digit(c) || c == U'.' || c == U'_';
}

char32_t ascii_lower(char32_t c) { return (c >= U'A' && c <= U'Z') ? c + 32 : c; }

bool starts_with_ci(std::u32string_view text, std::size_t pos, std::u32string_view prefix) {
    if (text.size() - pos < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (ascii_lower(text[pos + i]) != prefix[i]) return false;
    }
    return true;
}

std::size_t scan_url(std::u32string_view text, std::size_t pos) {
    if (!starts_with_ci(text, pos, U"http://") && !starts_with_ci(text, pos, U"https://") &&
        !starts_with_ci(text, pos, U"www.")) {
        return pos;
    }
    std::size_t end = pos;
    while (end < text.size() && !unicode::is_whitespace(text[end])) ++end;
    return end;
}

std::size_t scan_mention(std::u32string_view text, std::size_t pos) {
    if (text[pos] != U'@') return pos;
    std::size_t end = pos + 1;
    while (end < text.size() && end - pos - 1 < kMaxMentionLength && is_mention_char(text[end])) {
        ++end;
    }
    return end == pos + 1 ? pos : end;
}

std::size_t scan_number(std::u32string_view text, std::size_t pos) {
    if (!unicode::is_digit(text[pos])) return pos;
    std::size_t end = pos;
    while (end < text.size()) {
        if (unicode::is_digit(text[end])) {
            ++end;
        } else if ((text[end] == U'.' || text[end] == U',') && end + 1 < text.size() &&
                   unicode::is_digit(text[end + 1])) {
            end += 2;
        } else {
            break;
        }
    }
    return end;
}

std::size_t scan_word(std::u32string_view text, std::size_t pos) {
    if (!unicode::is_letter(text[pos])) return pos;
    std::size_t end = pos + 1;
    while (end < text.size()) {
        const char32_t c = text[end];
        if (unicode::is_letter(c) || unicode::is_mark(c)) {
            ++end;
        } else if ((is_apostrophe(c) || is_hyphen(c)) && end + 1 < text.size() &&
                   unicode::is_letter(text[end + 1])) {
            end += 2;
        } else {
            break;
        }
    }
    return end;
}

}  // namespace

std::string_view to_string(TokenKind kind) {
    switch (kind) {
        case TokenKind::kWord: return "WORD";
        case TokenKind::kEmoticon: return "EMOTICON";
        case TokenKind::kUrl: return "URL";
        case TokenKind::kMention: return "MENTION";
        case TokenKind::kNumber: return "NUMBER";
        case TokenKind::kPunct: return "PUNCT";
    }
    return "?";
}

EmoticonTable::EmoticonTable(const std::vector<std::string>& entries) {
    for (const auto& entry : entries) {
        auto pattern = unicode::normalize_nfc(unicode::decode_utf8(entry));
        if (pattern.empty()) fail(ErrorKind::kInput, "bad-emoticon", "empty emoticon");
        if (std::any_of(pattern.begin(), pattern.end(), unicode::is_whitespace)) {
            fail(ErrorKind::kInput, "bad-emoticon", "emoticon contains whitespace: " + entry);
        }
        patterns_.push_back(std::move(pattern));
    }
    std::sort(patterns_.begin(), patterns_.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        entries_.push_back(unicode::encode_utf8(patterns_[i]));
        by_first_[patterns_[i].front()].push_back(i);
    }
}

std::size_t EmoticonTable::match(std::u32string_view text, std::size_t pos) const {
    const auto it = by_first_.find(text[pos]);
    if (it == by_first_.end()) return 0;
    // Candidates are already in longest-first order.
    for (const std::size_t index : it->second) {
        const auto& pattern = patterns_[index];
        if (text.substr(pos, pattern.size()) == pattern) return pattern.size();
    }
    return 0;
}

std::vector<Token> tokenize(std::string_view text, const EmoticonTable& emoticons) {
    const std::u32string chars = unicode::normalize_nfc(unicode::decode_utf8(text));
    const std::u32string_view view(chars);

    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < view.size()) {
        if (unicode::is_whitespace(view[pos])) {
            ++pos;
            continue;
        }
        TokenKind kind;
        std::size_t end;
        if (const auto len = emoticons.match(view, pos); len > 0) {
            kind = TokenKind::kEmoticon;
            end = pos + len;
        } else if ((end = scan_url(view, pos)) > pos) {
            kind = TokenKind::kUrl;
        } else if ((end = scan_mention(view, pos)) > pos) {
            kind = TokenKind::kMention;
        } else if ((end = scan_number(view, pos)) > pos) {
            kind = TokenKind::kNumber;
        } else if ((end = scan_word(view, pos)) > pos) {
            kind = TokenKind::kWord;
        } else {
            kind = TokenKind::kPunct;
            end = pos + 1;
        }
        const auto piece = view.substr(pos, end - pos);
        std::string surface = kind == TokenKind::kWord
                                  ? unicode::encode_utf8(unicode::fold_case(piece))
                                  : unicode::encode_utf8(piece);
        tokens.push_back(Token{kind, std::move(surface), Span{pos, end}});
        pos = end;
    }
    return tokens;
}

std::vector<Token> prune(std::vector<Token> tokens) {
    std::erase_if(tokens, [](const Token& t) {
        switch (t.kind) {
            case TokenKind::kUrl:
            case TokenKind::kMention:
            case TokenKind::kPunct:
                return true;
            case TokenKind::kWord:
                return t.surface == "a" || t.surface == "an" || t.surface == "the";
            default:
                return false;
        }
    });
    return tokens;
}

}  // namespace facewall
