#include "facewall/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "facewall/error.hpp"

namespace facewall {

namespace {

using nlohmann::json;

json gram_to_json(const NGramKey& key) {
    json grams = json::array();
    for (const auto& g : key.grams) grams.push_back({std::string(to_string(g.kind)), g.surface});
    return grams;
}

std::optional<TokenKind> parse_kind(std::string_view name) {
    for (const auto kind : {TokenKind::kWord, TokenKind::kEmoticon, TokenKind::kUrl,
                            TokenKind::kMention, TokenKind::kNumber, TokenKind::kPunct}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

[[noreturn]] void bad_model(const std::string& detail) { fail(ErrorKind::kInput, "bad-model", detail); }

NGramKey gram_from_json(const json& value) {
    if (!value.is_array() || value.empty()) bad_model("gram must be a non-empty array");
    NGramKey key;
    for (const auto& g : value) {
        if (!g.is_array() || g.size() != 2 || !g[0].is_string() || !g[1].is_string()) {
            bad_model("gram entries are [kind, surface] pairs");
        }
        const auto kind = parse_kind(g[0].get<std::string>());
        if (!kind) bad_model("unknown token kind " + g[0].get<std::string>());
        key.grams.push_back(Gram{g[1].get<std::string>(), *kind});
    }
    return key;
}

}  // namespace

std::uint64_t NBModel::doc_count(EmotionClass c) const {
    const auto it = stats_.find(c);
    return it == stats_.end() ? 0 : it->second.docs;
}

std::uint64_t NBModel::total_docs() const {
    std::uint64_t total = 0;
    for (const auto& [c, s] : stats_) total += s.docs;
    return total;
}

std::uint64_t NBModel::feature_count(EmotionClass c, const NGramKey& key) const {
    const auto it = stats_.find(c);
    if (it == stats_.end()) return 0;
    const auto found = it->second.counts.find(key);
    return found == it->second.counts.end() ? 0 : found->second;
}

std::uint64_t NBModel::mass(EmotionClass c) const {
    const auto it = stats_.find(c);
    return it == stats_.end() ? 0 : it->second.mass;
}

double NBModel::likelihood(EmotionClass c, const NGramKey& key) const {
    const double denom = static_cast<double>(mass(c)) + alpha_ * static_cast<double>(vocabulary_.size());
    return (static_cast<double>(feature_count(c, key)) + alpha_) / denom;
}

NGramCounts nb_features(std::span<const Token> tokens, std::size_t n_max) {
    std::vector<Token> kept;
    kept.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.kind != TokenKind::kEmoticon) kept.push_back(t);
    }
    NGramCounts features;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (auto& [key, count] : extract_ngrams(kept, n)) features[key] += count;
    }
    return features;
}

NBModel train_nb(std::span<const TrainingDoc> docs, const NBOptions& options) {
    if (options.n_max == 0 || options.n_max > kMaxNgramOrder) {
        fail(ErrorKind::kUsage, "bad-n", "n_max out of range");
    }
    if (!(options.alpha > 0.0) || !std::isfinite(options.alpha)) {
        fail(ErrorKind::kUsage, "bad-alpha", "smoothing alpha must be positive");
    }

    std::map<EmotionClass, std::uint64_t> per_class;
    for (const auto& doc : docs) {
        if (doc.label == EmotionClass::kNeutral) {
            fail(ErrorKind::kInternal, "bad-label", "neutral is not a trainable class");
        }
        ++per_class[doc.label];
    }
    NBModel model;
    model.alpha_ = options.alpha;
    model.n_max_ = options.n_max;
    for (const auto& [c, n] : per_class) {
        if (n >= options.min_train_docs && n > 0) {
            model.classes_.push_back(c);
            model.stats_[c].docs = 0;
        }
    }
    if (model.classes_.size() < 2) {
        fail(ErrorKind::kInput, "untrainable",
             std::to_string(model.classes_.size()) + " class(es) with enough training documents");
    }

    for (const auto& doc : docs) {
        const auto it = model.stats_.find(doc.label);
        if (it == model.stats_.end()) continue;
        auto& stats = it->second;
        ++stats.docs;
        for (const auto& [key, count] : nb_features(doc.tokens, options.n_max)) {
            stats.counts[key] += count;
            stats.mass += count;
            model.vocabulary_.insert(key);
        }
    }
    return model;
}

NBPrediction nb_posterior(const NBModel& model, std::span<const Token> tokens) {
    const auto features = nb_features(tokens, model.n_max());
    const double total_docs = static_cast<double>(model.total_docs());

    std::map<EmotionClass, double> log_post;
    NBPrediction prediction;
    for (const auto c : model.classes()) {
        log_post[c] = std::log(static_cast<double>(model.doc_count(c))) - std::log(total_docs);
    }
    for (const auto& [key, count] : features) {
        if (!model.in_vocabulary(key)) continue;
        prediction.known_features += count;
        for (const auto c : model.classes()) {
            log_post[c] += static_cast<double>(count) * std::log(model.likelihood(c, key));
        }
    }

    double max_log = -std::numeric_limits<double>::infinity();
    for (const auto& [c, v] : log_post) max_log = std::max(max_log, v);
    double norm = 0.0;
    for (const auto& [c, v] : log_post) norm += std::exp(v - max_log);
    for (const auto& [c, v] : log_post) prediction.posterior[c] = std::exp(v - max_log) / norm;
    return prediction;
}

std::map<EmotionClass, double> nb_predict(const NBModel& model, std::span<const Token> tokens) {
    return nb_posterior(model, tokens).posterior;
}

std::map<EmotionClass, std::vector<ExpansionEntry>> expand_lexicon(const NBModel& model,
                                                                   std::size_t k, double theta) {
    const double alpha = model.alpha();
    const double v = static_cast<double>(model.vocabulary_size());
    std::map<EmotionClass, std::vector<ExpansionEntry>> out;
    for (const auto c : model.classes()) {
        auto& entries = out[c];
        if (k == 0) continue;
        std::uint64_t rest_mass = 0;
        for (const auto other : model.classes()) {
            if (other != c) rest_mass += model.mass(other);
        }
        const double in_denom = static_cast<double>(model.mass(c)) + alpha * v;
        const double out_denom = static_cast<double>(rest_mass) + alpha * v;
        for (const auto& key : model.vocabulary()) {
            std::uint64_t rest_count = 0;
            for (const auto other : model.classes()) {
                if (other != c) rest_count += model.feature_count(other, key);
            }
            const double score =
                std::log2((static_cast<double>(model.feature_count(c, key)) + alpha) / in_denom) -
                std::log2((static_cast<double>(rest_count) + alpha) / out_denom);
            if (score >= theta) entries.push_back({key, score});
        }
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return a.score != b.score ? a.score > b.score : a.gram < b.gram;
        });
        if (entries.size() > k) entries.resize(k);
    }
    return out;
}

std::string expansion_json(const std::map<EmotionClass, std::vector<ExpansionEntry>>& expansion) {
    json classes = json::object();
    for (const auto& [c, entries] : expansion) {
        json list = json::array();
        for (const auto& e : entries) {
            list.push_back({{"n", e.gram.n()}, {"gram", joined_surface(e.gram)}, {"score", e.score}});
        }
        classes[std::string(to_string(c))] = std::move(list);
    }
    return json{{"classes", classes}}.dump(2) + "\n";
}

std::string NBModel::to_json() const {
    json vocab = json::array();
    std::map<NGramKey, std::size_t> index;
    for (const auto& key : vocabulary_) {
        index.emplace(key, index.size());
        vocab.push_back(gram_to_json(key));
    }
    json classes = json::array();
    for (const auto c : classes_) {
        const auto& stats = stats_.at(c);
        json counts = json::array();
        for (const auto& [key, count] : stats.counts) counts.push_back({index.at(key), count});
        classes.push_back({{"name", std::string(to_string(c))},
                           {"docs", stats.docs},
                           {"mass", stats.mass},
                           {"counts", std::move(counts)}});
    }
    json doc = {{"format", "facewall-nb"}, {"version", 1},       {"alpha", alpha_},
                {"n_max", n_max_},         {"vocabulary", vocab}, {"classes", classes}};
    return doc.dump() + "\n";
}

NBModel NBModel::from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        bad_model(e.what());
    }
    try {
        if (doc.at("format") != "facewall-nb" || doc.at("version") != 1) bad_model("unsupported format");
        NBModel model;
        model.alpha_ = doc.at("alpha").get<double>();
        model.n_max_ = doc.at("n_max").get<std::size_t>();
        std::vector<NGramKey> keys;
        for (const auto& g : doc.at("vocabulary")) {
            keys.push_back(gram_from_json(g));
            model.vocabulary_.insert(keys.back());
        }
        for (const auto& entry : doc.at("classes")) {
            const auto c = parse_emotion_class(entry.at("name").get<std::string>());
            if (!c || *c == EmotionClass::kNeutral || model.stats_.count(*c)) bad_model("bad class");
            model.classes_.push_back(*c);
            auto& stats = model.stats_[*c];
            stats.docs = entry.at("docs").get<std::uint64_t>();
            stats.mass = entry.at("mass").get<std::uint64_t>();
            for (const auto& pair : entry.at("counts")) {
                const auto i = pair.at(0).get<std::size_t>();
                if (i >= keys.size()) bad_model("vocabulary index out of range");
                stats.counts[keys[i]] = pair.at(1).get<std::uint64_t>();
            }
        }
        return model;
    } catch (const json::exception& e) {
        bad_model(e.what());
    }
}

}  // namespace facewall
