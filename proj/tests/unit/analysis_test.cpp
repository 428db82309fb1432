#include <doctest.h>

#include <set>

#include "facewall/analysis.hpp"
#include "facewall/ingest.hpp"
#include "facewall/synth.hpp"
#include "facewall/timestamp.hpp"
#include "support.hpp"

using namespace facewall;
using facewall::test::TempDir;

TEST_CASE("config hash follows semantic fields") {
    AnalysisConfig base;
    CHECK(base.hash().size() == 16);
    CHECK(AnalysisConfig{}.hash() == base.hash());

    auto changed = [&](auto&& mutate) {
        AnalysisConfig c;
        mutate(c);
        return c.hash() != base.hash();
    };
    CHECK(changed([](AnalysisConfig& c) { c.granularity = Granularity::kWeek; }));
    CHECK(changed([](AnalysisConfig& c) { c.n_max = 2; }));
    CHECK(changed([](AnalysisConfig& c) { c.alpha = 0.5; }));
    CHECK(changed([](AnalysisConfig& c) { c.min_train_docs = 6; }));
    CHECK(changed([](AnalysisConfig& c) { c.expansion_k = 10; }));
    CHECK(changed([](AnalysisConfig& c) { c.expansion_theta = 2.0; }));
    CHECK(changed([](AnalysisConfig& c) {
        c.lexicon = EmotionLexicon::from_json(R"j({"classes":{"happy":{"words":["joy"]}}})j");
    }));
    // Same lexicon content, different spelling of the source JSON.
    CHECK_FALSE(changed([](AnalysisConfig& c) { c.lexicon = EmotionLexicon::from_json(EmotionLexicon::default_json()); }));
}

TEST_CASE("analysis writes per-user and aggregate artifacts") {
    TempDir dir;
    auto batch = parse_corpus(
        R"j({"user_id":"u_1","timestamp":"2015-03-02T10:00:00Z","text":"happy :-)"})j" "\n"
        R"j({"user_id":"_all","timestamp":"2015-04-02T10:00:00Z","text":"anger"})j" "\n",
        CorpusFormat::kJsonl);
    auto store = Store::open(dir / "s", true);
    store.append(batch.posts);
    AnalysisConfig config;
    auto summary = analyze_store(store, config);
    CHECK(summary.users == 2);
    CHECK(summary.posts == 2);
    CHECK_FALSE(summary.model_trained);

    auto meta = current_analysis(store);
    REQUIRE(meta.has_value());
    CHECK(meta->users == std::vector<std::string>{"_all", "u_1"});
    CHECK(std::filesystem::exists(store.derived_dir("u_1", meta->config_hash) / "series.csv"));
    CHECK(std::filesystem::exists(store.derived_dir("_all", meta->config_hash) / "labels.jsonl"));
    CHECK(std::filesystem::exists(store.aggregate_dir(meta->config_hash) / "meta.json"));

    auto mine = load_series(store, *meta, std::string("_all"));
    auto everyone = load_series(store, *meta, std::nullopt);
    REQUIRE(!mine.empty());
    CHECK(mine.front().points.size() == 1);
    CHECK(everyone.front().points.size() == 2);
    CHECK(store.manifest().config_hash == std::optional<std::string>(meta->config_hash));
}

TEST_CASE("synthetic corpus shape") {
    auto corpus = generate_corpus();
    CHECK(corpus.posts.size() > 45000);
    CHECK(corpus.posts.size() < 60000);
    CHECK(corpus.ramped_users.size() == 10);
    CHECK(corpus.control_users.size() == 10);

    std::set<std::string> users, keys;
    for (std::size_t i = 0; i < corpus.posts.size(); ++i) {
        const auto& p = corpus.posts[i];
        users.insert(p.user_id);
        keys.insert(dedupe_key(p));
        if (i > 0) {
            const auto& q = corpus.posts[i - 1];
            CHECK((q.timestamp < p.timestamp || (q.timestamp == p.timestamp && q.user_id < p.user_id)));
        }
    }
    CHECK(users.size() == 20);
    CHECK(keys.size() == corpus.posts.size());
    CHECK(format_rfc3339(corpus.posts.front().timestamp).rfind("2010-01", 0) == 0);
    CHECK(format_rfc3339(corpus.posts.back().timestamp).rfind("2016-12", 0) == 0);

    auto again = generate_corpus();
    CHECK(again.posts == corpus.posts);
    SynthOptions other;
    other.seed = 1;
    CHECK(generate_corpus(other).posts != corpus.posts);
}
