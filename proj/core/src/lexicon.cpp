#include "facewall/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "facewall/error.hpp"
#include "facewall/unicode.hpp"

namespace facewall {

namespace detail {
extern const std::string_view kDefaultLexiconJson;
}

namespace {

using nlohmann::json;

[[noreturn]] void bad_lexicon(const std::string& detail) {
    fail(ErrorKind::kInput, "bad-lexicon", detail);
}

std::u32string checked_surface(const std::string& raw, std::string_view what) {
    if (!unicode::is_valid_utf8(raw)) bad_lexicon(std::string(what) + " is not valid UTF-8");
    auto chars = unicode::normalize_nfc(unicode::decode_utf8(raw));
    if (chars.empty()) bad_lexicon(std::string("empty ") + std::string(what));
    if (std::any_of(chars.begin(), chars.end(), unicode::is_whitespace)) {
        bad_lexicon(std::string(what) + " contains whitespace: " + raw);
    }
    return chars;
}

}  // namespace

std::string_view to_string(EmotionClass c) {
    switch (c) {
        case EmotionClass::kHappy: return "happy";
        case EmotionClass::kSad: return "sad";
        case EmotionClass::kLove: return "love";
        case EmotionClass::kDisappointment: return "disappointment";
        case EmotionClass::kNeutral: return "neutral";
    }
    return "?";
}

std::optional<EmotionClass> parse_emotion_class(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    for (const auto c : kAllClasses) {
        if (lower == to_string(c)) return c;
    }
    return std::nullopt;
}

EmotionLexicon::EmotionLexicon(std::map<EmotionClass, ClassEntries> classes) {
    std::map<std::string, EmotionClass> owner;
    std::vector<std::string> all_emoticons;
    auto claim = [&](const std::string& surface, EmotionClass c) {
        const auto [it, inserted] = owner.emplace(surface, c);
        if (!inserted && it->second != c) {
            bad_lexicon("'" + surface + "' listed under both " + std::string(to_string(it->second)) +
                        " and " + std::string(to_string(c)));
        }
    };

    for (const auto& [cls, entries] : classes) {
        if (cls == EmotionClass::kNeutral) {
            if (!entries.words.empty() || !entries.emoticons.empty()) {
                bad_lexicon("neutral cannot carry lexicon entries");
            }
            continue;
        }
        ClassEntries& normalized = classes_[cls];
        for (const auto& word : entries.words) {
            auto folded = unicode::encode_utf8(unicode::fold_case(checked_surface(word, "word")));
            claim(folded, cls);
            word_index_.emplace(folded, cls);
            normalized.words.insert(std::move(folded));
        }
        for (const auto& emoticon : entries.emoticons) {
            auto nfc = unicode::encode_utf8(checked_surface(emoticon, "emoticon"));
            claim(nfc, cls);
            emoticon_index_.emplace(nfc, cls);
            if (normalized.emoticons.insert(nfc).second) all_emoticons.push_back(nfc);
        }
    }
    for (const auto c : kLexiconClasses) classes_[c];
    table_ = EmoticonTable(all_emoticons);
}

EmotionLexicon EmotionLexicon::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        bad_lexicon(e.what());
    }
    if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_object()) {
        bad_lexicon("expected an object with a \"classes\" object");
    }
    std::map<EmotionClass, ClassEntries> classes;
    for (const auto& [name, body] : doc["classes"].items()) {
        const auto cls = parse_emotion_class(name);
        if (!cls) bad_lexicon("unknown class '" + name + "'");
        if (classes.count(*cls)) bad_lexicon("class '" + name + "' given twice");
        if (!body.is_object()) bad_lexicon("class '" + name + "' must be an object");
        ClassEntries& entries = classes[*cls];
        for (const auto& [field, target] :
             {std::pair{"words", &entries.words}, std::pair{"emoticons", &entries.emoticons}}) {
            if (!body.contains(field)) continue;
            const auto& list = body[field];
            if (!list.is_array()) bad_lexicon(std::string(field) + " must be an array");
            for (const auto& item : list) {
                if (!item.is_string()) bad_lexicon(std::string(field) + " entries must be strings");
                target->insert(item.get<std::string>());
            }
        }
    }
    return EmotionLexicon(std::move(classes));
}

EmotionLexicon EmotionLexicon::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::kInput, "io", "cannot read lexicon " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json(buffer.str());
}

const EmotionLexicon& EmotionLexicon::default_lexicon() {
    static const EmotionLexicon lexicon = from_json(detail::kDefaultLexiconJson);
    return lexicon;
}

std::string_view EmotionLexicon::default_json() { return detail::kDefaultLexiconJson; }

const ClassEntries& EmotionLexicon::entries(EmotionClass c) const {
    static const ClassEntries kEmpty;
    const auto it = classes_.find(c);
    return it == classes_.end() ? kEmpty : it->second;
}

std::optional<EmotionClass> EmotionLexicon::word_class(std::string_view surface) const {
    const auto it = word_index_.find(surface);
    if (it == word_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<EmotionClass> EmotionLexicon::emoticon_class(std::string_view surface) const {
    const auto it = emoticon_index_.find(surface);
    if (it == emoticon_index_.end()) return std::nullopt;
    return it->second;
}

std::string EmotionLexicon::canonical_json() const {
    json classes = json::object();
    for (const auto& [cls, entries] : classes_) {
        classes[std::string(to_string(cls))] = {
            {"emoticons", json(std::vector<std::string>(entries.emoticons.begin(), entries.emoticons.end()))},
            {"words", json(std::vector<std::string>(entries.words.begin(), entries.words.end()))},
        };
    }
    return json{{"classes", classes}}.dump();
}

}  // namespace facewall
