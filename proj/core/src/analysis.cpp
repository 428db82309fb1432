#include "facewall/analysis.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "facewall/classifier.hpp"
#include "facewall/error.hpp"
#include "facewall/hash.hpp"
#include "facewall/lexer.hpp"
#include "facewall/naive_bayes.hpp"

namespace facewall {

namespace fs = std::filesystem;

namespace {

using nlohmann::json;

constexpr const char* kMetaFile = "meta.json";

struct PostWork {
    std::vector<Token> tokens;
    LabeledPost labeled;
    PostLabel label;
};

std::vector<BucketSeries> all_series(const BucketRange& range, std::span<const LabeledPost> posts,
                                     SeriesMeasure measure) {
    std::vector<BucketSeries> out;
    for (const auto c : kAllSeriesClasses) out.push_back(emotion_series(range, posts, c, measure));
    return out;
}

void write_scope(const fs::path& dir, std::span<const LabeledPost> posts, Granularity granularity,
                 const NGramProfile& profile) {
    const auto range = bucketize(posts, granularity);
    write_file_atomic(dir / "series.csv", series_csv(all_series(range, posts, SeriesMeasure::kPosts)));
    write_file_atomic(dir / "occurrences.csv",
                      series_csv(all_series(range, posts, SeriesMeasure::kOccurrences)));
    write_file_atomic(dir / "ngrams.csv", ngram_csv(profile.counts));
}

json labels_json(const LabelSet& labels) {
    json out = json::array();
    for (const auto c : labels) out.push_back(std::string(to_string(c)));
    return out;
}

std::optional<AnalysisMeta> read_meta(const fs::path& path) {
    if (!fs::is_regular_file(path)) return std::nullopt;
    try {
        const auto doc = json::parse(read_file(path));
        AnalysisMeta meta;
        meta.config_hash = doc.at("config_hash").get<std::string>();
        const auto g = parse_granularity(doc.at("granularity").get<std::string>());
        if (!g) return std::nullopt;
        meta.granularity = *g;
        meta.record_count = doc.at("record_count").get<std::uint64_t>();
        meta.users = doc.at("users").get<std::vector<std::string>>();
        meta.model_trained = doc.at("model").get<std::string>() == "trained";
        return meta;
    } catch (const json::exception&) {
        fail(ErrorKind::kStore, "store-corrupt", "unreadable " + path.string());
    }
}

}  // namespace

std::string AnalysisConfig::canonical_json() const {
    json doc = {{"schema", 1},
                {"granularity", std::string(to_string(granularity))},
                {"n_max", n_max},
                {"alpha", alpha},
                {"min_train_docs", min_train_docs},
                {"expansion_k", expansion_k},
                {"expansion_theta", expansion_theta},
                {"lexicon", json::parse(lexicon.canonical_json())}};
    return doc.dump();
}

std::string AnalysisConfig::hash() const { return sha256_hex(canonical_json()).substr(0, 16); }

AnalysisSummary analyze_store(Store& store, const AnalysisConfig& config) {
    if (config.n_max == 0 || config.n_max > kMaxNgramOrder) {
        fail(ErrorKind::kUsage, "bad-n", "n-gram order out of range");
    }
    AnalysisSummary summary;
    summary.config_hash = config.hash();
    if (store.manifest().record_count == 0) return summary;

    const auto aggregate = store.aggregate_dir(summary.config_hash);
    if (const auto meta = read_meta(aggregate / kMetaFile);
        meta && meta->record_count == store.manifest().record_count) {
        summary.cached = true;
        summary.users = meta->users.size();
        summary.posts = meta->record_count;
        summary.model_trained = meta->model_trained;
        if (!meta->model_trained) summary.model_note = "untrainable";
        store.set_config_hash(summary.config_hash);
        return summary;
    }

    const auto posts = store.read_posts();
    const auto& lexicon = config.lexicon;
    std::vector<PostWork> work(posts.size());
    std::vector<TrainingDoc> training;
    for (std::size_t i = 0; i < posts.size(); ++i) {
        work[i].tokens = prune(tokenize(posts[i].text, lexicon.emoticon_table()));
        if (const auto by_emoticon = emoticon_label(work[i].tokens, lexicon); by_emoticon.size() == 1) {
            training.push_back(TrainingDoc{work[i].tokens, *by_emoticon.begin()});
        }
    }

    std::optional<NBModel> model;
    try {
        model = train_nb(training, NBOptions{config.n_max, config.alpha, config.min_train_docs});
        summary.model_trained = true;
    } catch (const Error& e) {
        if (e.code() != "untrainable") throw;
        summary.model_note = "untrainable";
    }

    std::map<std::string, std::vector<std::size_t>> by_user;
    std::vector<LabeledPost> labeled(posts.size());
    for (std::size_t i = 0; i < posts.size(); ++i) {
        auto& w = work[i];
        w.label = classify_post(w.tokens, lexicon, model ? &*model : nullptr);
        auto& lp = labeled[i];
        lp.timestamp = posts[i].timestamp;
        lp.labels = w.label.labels;
        lp.token_count = w.tokens.size();
        for (const auto& t : w.tokens) {
            std::optional<EmotionClass> c;
            if (t.kind == TokenKind::kEmoticon) c = lexicon.emoticon_class(t.surface);
            else if (t.kind == TokenKind::kWord) c = lexicon.word_class(t.surface);
            if (c) ++lp.class_hits[*c];
        }
        by_user[posts[i].user_id].push_back(i);
    }

    NGramProfile all_profile{std::string(kAllUsersDir), "all", {}, 0};
    std::vector<std::string> users;
    for (const auto& [user, indices] : by_user) {
        users.push_back(user);
        std::vector<LabeledPost> user_posts;
        NGramProfile profile{user, "all", {}, 0};
        std::string labels_out;
        for (const auto i : indices) {
            user_posts.push_back(labeled[i]);
            accumulate(profile, work[i].tokens, config.n_max);
            json row = {{"timestamp", format_rfc3339(posts[i].timestamp)},
                        {"labels", labels_json(work[i].label.labels)},
                        {"method", std::string(to_string(work[i].label.method))}};
            labels_out += row.dump();
            labels_out += '\n';
        }
        const auto dir = store.derived_dir(user, summary.config_hash);
        write_scope(dir, user_posts, config.granularity, profile);
        write_file_atomic(dir / "labels.jsonl", labels_out);
        all_profile = merge_profiles(std::move(all_profile), NGramProfile{all_profile.owner, "all", std::move(profile.counts),
                                                               profile.post_count});
    }

    write_scope(aggregate, labeled, config.granularity, all_profile);
    write_file_atomic(aggregate / "config.json", config.canonical_json() + "\n");
    if (model) {
        write_file_atomic(aggregate / "model.json", model->to_json());
        write_file_atomic(aggregate / "expansion.json",
                          expansion_json(expand_lexicon(*model, config.expansion_k, config.expansion_theta)));
    }

    json meta = {{"config_hash", summary.config_hash},
                 {"granularity", std::string(to_string(config.granularity))},
                 {"record_count", store.manifest().record_count},
                 {"users", users},
                 {"model", model ? "trained" : "untrainable"}};
    write_file_atomic(aggregate / kMetaFile, meta.dump(2) + "\n");
    store.set_config_hash(summary.config_hash);

    summary.users = users.size();
    summary.posts = posts.size();
    return summary;
}

std::optional<AnalysisMeta> current_analysis(const Store& store) {
    const auto& hash = store.manifest().config_hash;
    if (!hash) return std::nullopt;
    auto meta = read_meta(store.aggregate_dir(*hash) / kMetaFile);
    if (!meta || meta->record_count != store.manifest().record_count) return std::nullopt;
    return meta;
}

std::vector<BucketSeries> load_series(const Store& store, const AnalysisMeta& meta,
                                      const std::optional<std::string>& user_id, SeriesMeasure measure) {
    const auto dir = user_id ? store.derived_dir(*user_id, meta.config_hash) : store.aggregate_dir(meta.config_hash);
    const char* file = measure == SeriesMeasure::kPosts ? "series.csv" : "occurrences.csv";
    return parse_series_csv(read_file(dir / file), measure);
}

std::string load_ngram_csv(const Store& store, const AnalysisMeta& meta,
                           const std::optional<std::string>& user_id) {
    const auto dir = user_id ? store.derived_dir(*user_id, meta.config_hash) : store.aggregate_dir(meta.config_hash);
    return read_file(dir / "ngrams.csv");
}

}  // namespace facewall
