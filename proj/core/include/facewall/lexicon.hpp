#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "facewall/lexer.hpp"

namespace facewall {

enum class EmotionClass : std::uint8_t { kHappy, kSad, kLove, kDisappointment, kNeutral };

inline constexpr std::array<EmotionClass, 4> kLexiconClasses = {
    EmotionClass::kHappy, EmotionClass::kSad, EmotionClass::kLove, EmotionClass::kDisappointment};

inline constexpr std::array<EmotionClass, 5> kAllClasses = {
    EmotionClass::kHappy, EmotionClass::kSad, EmotionClass::kLove, EmotionClass::kDisappointment,
    EmotionClass::kNeutral};

/// Lowercase name: "happy", "sad", "love", "disappointment", "neutral".
std::string_view to_string(EmotionClass c);

/// Case-insensitive inverse of to_string.
std::optional<EmotionClass> parse_emotion_class(std::string_view name);

struct ClassEntries {
    std::set<std::string> words;      // NFC, case-folded
    std::set<std::string> emoticons;  // NFC, verbatim
};

/// Per-class keyword and emoticon tables. The emoticon union doubles as the
/// lexer's EmoticonTable so tokenization and labeling share one source.
class EmotionLexicon {
public:
    /// Validates and normalizes. Throws Error{kInput, "bad-lexicon"} when a
    /// surface is empty, contains whitespace, or appears under two classes,
    /// or when Neutral is given entries.
    explicit EmotionLexicon(std::map<EmotionClass, ClassEntries> classes);

    /// Parses {"classes": {"<name>": {"words": [...], "emoticons": [...]}}}.
    static EmotionLexicon from_json(std::string_view text);
    static EmotionLexicon load(const std::filesystem::path& path);

    /// The shipped lexicon: the four classes with their verbatim word and
    /// emoticon lists.
    static const EmotionLexicon& default_lexicon();
    static std::string_view default_json();

    const ClassEntries& entries(EmotionClass c) const;
    const EmoticonTable& emoticon_table() const { return table_; }

    std::optional<EmotionClass> word_class(std::string_view surface) const;
    std::optional<EmotionClass> emoticon_class(std::string_view surface) const;

    /// Canonical serialization (sorted keys and entries); used for hashing.
    std::string canonical_json() const;

private:
    std::map<EmotionClass, ClassEntries> classes_;
    std::map<std::string, EmotionClass, std::less<>> word_index_;
    std::map<std::string, EmotionClass, std::less<>> emoticon_index_;
    EmoticonTable table_;
};

}  // namespace facewall
