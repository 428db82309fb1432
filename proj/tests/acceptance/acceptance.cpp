// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "facewall/classifier.hpp"
#include "facewall/divergence.hpp"
#include "facewall/lexer.hpp"
#include "facewall/naive_bayes.hpp"
#include "facewall/ngram.hpp"
#include "facewall/store.hpp"
#include "facewall/synth.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace facewall;
using Clock = std::chrono::steady_clock;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

int cli_run(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    if (out) *out = o.str();
    if (code != 0) std::cerr << "facewall " << args.front() << " exited " << code << ": " << e.str();
    return code;
}

Outcome lexer_suite() {
    auto t0 = Clock::now();
    const auto& table = EmotionLexicon::default_lexicon().emoticon_table();
    std::mt19937_64 rng(20190826);
    std::size_t partition_fail = 0, prune_fail = 0;
    for (int i = 0; i < 1000; ++i) {
        auto text = test::random_unicode(rng, 40);
        auto tokens = tokenize(text, table);
        if (!test::spans_partition(text, tokens)) ++partition_fail;
        auto once = prune(tokens);
        if (prune(once) != once) ++prune_fail;
    }
    std::size_t emoticon_fail = 0, contexts = 0;
    std::bernoulli_distribution glue(0.5);
    for (const auto& emo : table.entries()) {
        for (int i = 0; i < 100; ++i) {
            auto text = test::random_word(rng) + " " + test::random_word(rng) + (glue(rng) ? "" : " ") + emo +
                        (glue(rng) ? "" : " ") + test::random_word(rng);
            std::size_t hits = 0;
            bool exact = true;
            for (const auto& t : tokenize(text, table)) {
                if (t.kind != TokenKind::kEmoticon) continue;
                ++hits;
                exact = exact && t.surface == emo;
            }
            ++contexts;
            if (hits != 1 || !exact) ++emoticon_fail;
        }
    }
    // The nine symbols as printed in the published class lists.
    static const std::set<std::string> kPrinted = {":-)", ":)", "=)", ":D", "☹", ":-()", ":(", "=(", "<3"};
    std::size_t printed = 0;
    for (const auto& e : table.entries()) printed += kPrinted.count(e);
    double secs = seconds_since(t0);
    Outcome o;
    o.pass = partition_fail == 0 && prune_fail == 0 && emoticon_fail == 0 && printed == kPrinted.size() &&
             secs < 5.0;
    o.detail = "partition_fail=" + std::to_string(partition_fail) + " prune_fail=" + std::to_string(prune_fail) +
               " emoticons=" + std::to_string(table.size()) + " printed_covered=" + std::to_string(printed) + "/9" + " contexts=" + std::to_string(contexts) +
               " emoticon_fail=" + std::to_string(emoticon_fail) + " time=" + fmt("%.2fs", secs);
    return o;
}

Outcome ngram_conservation() {
    std::mt19937_64 rng(1);
    std::size_t conservation_fail = 0;
    for (int i = 0; i < 1000; ++i) {
        auto toks = test::random_tokens(rng, 25, 6);
        for (std::size_t n = 1; n <= 3; ++n) {
            std::uint64_t total = 0;
            for (const auto& [k, c] : extract_ngrams(toks, n)) total += c;
            if (total != (toks.size() >= n ? toks.size() - n + 1 : 0)) ++conservation_fail;
        }
    }
    auto random_profile = [&] {
        NGramProfile p;
        p.owner = "u";
        std::uniform_int_distribution<int> posts(0, 4);
        for (int k = posts(rng); k > 0; --k) accumulate(p, test::random_tokens(rng, 8, 5), 3);
        return p;
    };
    auto same = [](const NGramProfile& a, const NGramProfile& b) {
        return a.counts == b.counts && a.post_count == b.post_count;
    };
    std::size_t merge_fail = 0;
    for (int i = 0; i < 200; ++i) {
        auto a = random_profile(), b = random_profile(), c = random_profile();
        if (!same(merge_profiles(merge_profiles(a, b), c), merge_profiles(a, merge_profiles(b, c)))) ++merge_fail;
        if (!same(merge_profiles(a, b), merge_profiles(b, a))) ++merge_fail;
    }
    return {conservation_fail == 0 && merge_fail == 0,
            "lists=1000 orders=1..3 conservation_fail=" + std::to_string(conservation_fail) +
                " triples=200 merge_fail=" + std::to_string(merge_fail)};
}

Outcome classifier_oracle() {
    auto sweep = test::nb_oracle_sweep(1000, 600);
    std::vector<TrainingDoc> docs = {{test::words({"great", "day"}), EmotionClass::kHappy},
                                     {test::words({"bad", "day"}), EmotionClass::kSad}};
    auto toy = train_nb(docs, NBOptions{1, 1.0, 1});
    double p = nb_predict(toy, test::words({"great"}))[EmotionClass::kHappy];
    double toy_err = std::abs(p - 2.0 / 3.0);
    return {sweep.corpora >= 500 && sweep.max_error <= 1e-12 && toy_err <= 1e-12,
            "corpora=" + std::to_string(sweep.corpora) + " comparisons=" + std::to_string(sweep.comparisons) +
                " max_err=" + fmt("%.3g", sweep.max_error) + " P(happy|great)=" + fmt("%.15f", p)};
}

Outcome emoticon_precedence() {
    const auto& base = EmotionLexicon::default_lexicon();
    std::map<EmotionClass, ClassEntries> classes;
    for (auto c : kLexiconClasses) classes[c] = base.entries(c);
    // No emoticon is published for Disappointment; one is added for this check.
    classes[EmotionClass::kDisappointment].emoticons.insert(">:(");
    const EmotionLexicon lex(classes);

    std::mt19937_64 rng(17);
    std::size_t trials = 0, held = 0;
    for (auto c : kLexiconClasses) {
        std::vector<std::string> emos(lex.entries(c).emoticons.begin(), lex.entries(c).emoticons.end());
        std::uniform_int_distribution<std::size_t> pick(0, emos.size() - 1);
        std::uniform_int_distribution<int> len(1, 6);
        for (int i = 0; i < 50; ++i) {
            std::string text;
            for (int k = len(rng); k > 0; --k) text += test::random_word(rng) + " ";
            text += "anger love " + emos[pick(rng)];
            auto label = classify_post(prune(tokenize(text, lex.emoticon_table())), lex);
            ++trials;
            if (label.labels.count(c)) ++held;
        }
    }
    return {trials == 200 && held == trials,
            "classes=4 prefixes=50 held=" + std::to_string(held) + "/" + std::to_string(trials)};
}

Outcome jsd_properties() {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::bernoulli_distribution zero(0.2);
    double max_asym = 0, max_self = 0, lo = 1, hi = 0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> p(5), q(5);
        for (auto& x : p) x = zero(rng) ? 0.0 : u(rng);
        for (auto& x : q) x = zero(rng) ? 0.0 : u(rng);
        p[0] += 1e-3;
        q[4] += 1e-3;
        double pq = jsd(p, q), qp = jsd(q, p);
        max_asym = std::max(max_asym, std::abs(pq - qp));
        max_self = std::max(max_self, std::abs(jsd(p, p)));
        lo = std::min(lo, pq);
        hi = std::max(hi, pq);
    }
    std::vector<double> a = {0.5, 0.5}, b = {1.0, 0.0};
    double v = jsd(a, b);
    bool pass = max_asym <= 1e-12 && max_self <= 1e-12 && lo >= 0.0 && hi <= 1.0 && std::abs(v - 0.31128) <= 1e-4;
    return {pass, "pairs=1000 max_asym=" + fmt("%.3g", max_asym) + " max_self=" + fmt("%.3g", max_self) +
                      " range=[" + fmt("%.4f", lo) + "," + fmt("%.4f", hi) + "] jsd((.5,.5),(1,0))=" +
                      fmt("%.6f", v)};
}

struct PipelineRun {
    fs::path store;
    fs::path report;
    fs::path series;
    fs::path chart;
    double seconds = 0;
    bool ok = false;
};

PipelineRun run_pipeline(const fs::path& dir, const fs::path& fixture) {
    PipelineRun r;
    r.store = dir / "store";
    r.report = dir / "report.json";
    r.series = dir / "series.csv";
    r.chart = dir / "disappointment.svg";
    auto t0 = Clock::now();
    r.ok = cli_run({"ingest", "--input", fixture.string(), "--format", "jsonl", "--store", r.store.string()}) == 0 &&
           cli_run({"analyze", "--store", r.store.string()}) == 0 &&
           cli_run({"detect", "--store", r.store.string(), "--out", r.report.string()}) == 0;
    r.seconds = seconds_since(t0);
    r.ok = r.ok &&
           cli_run({"export", "--store", r.store.string(), "--what", "series", "--out", r.series.string()}) == 0 &&
           cli_run({"chart", "--store", r.store.string(), "--class", "disappointment", "--all-users", "--out",
                    r.chart.string()}) == 0;
    return r;
}

bool in_years(const std::string& bucket, int first, int last) {
    int y = std::stoi(bucket.substr(0, 4));
    return y >= first && y <= last;
}

Outcome reconstruction(const SynthCorpus& corpus, const PipelineRun& run, const fs::path& dir) {
    if (!run.ok) return {false, "pipeline failed"};
    auto report = json::parse(test::read_text(run.report));
    std::set<std::string> ramped(corpus.ramped_users.begin(), corpus.ramped_users.end());
    std::size_t ramped_hit = 0;
    for (const auto& u : report["reports"]) {
        if (!ramped.count(u["user_id"].get<std::string>())) continue;
        for (const auto& f : u["flags"]) {
            bool relevant = f["signal"] == "jsd" || (f["signal"] == "zscore" && f["class"] == "disappointment");
            if (relevant && in_years(f["bucket"].get<std::string>(), 2014, 2016)) {
                ++ramped_hit;
                break;
            }
        }
    }

    auto strict = dir / "report-z4.json";
    bool ok = cli_run({"detect", "--store", run.store.string(), "--z", "4", "--out", strict.string()}) == 0;
    std::set<std::string> controls(corpus.control_users.begin(), corpus.control_users.end());
    std::size_t control_flags = 0;
    if (ok) {
        for (const auto& u : json::parse(test::read_text(strict))["reports"]) {
            if (!controls.count(u["user_id"].get<std::string>())) continue;
            for (const auto& f : u["flags"]) {
                if (in_years(f["bucket"].get<std::string>(), 2010, 2013)) ++control_flags;
            }
        }
    }
    double share = corpus.ramped_users.empty() ? 0.0 : double(ramped_hit) / double(corpus.ramped_users.size());
    bool pass = ok && share >= 0.9 && control_flags == 0 && run.seconds < 60.0;
    return {pass, "posts=" + std::to_string(corpus.posts.size()) + " ramped_flagged=" + std::to_string(ramped_hit) +
                      "/" + std::to_string(corpus.ramped_users.size()) +
                      " control_flags_2010_2013@z4=" + std::to_string(control_flags) +
                      " end_to_end=" + fmt("%.2fs", run.seconds)};
}

Outcome determinism(const PipelineRun& a, const PipelineRun& b) {
    if (!a.ok || !b.ok) return {false, "pipeline failed"};
    bool series = test::read_text(a.series) == test::read_text(b.series);
    bool report = test::read_text(a.report) == test::read_text(b.report);
    bool chart = test::read_text(a.chart) == test::read_text(b.chart);
    return {series && report && chart, std::string("series=") + (series ? "same" : "differ") +
                                           " report=" + (report ? "same" : "differ") +
                                           " chart=" + (chart ? "same" : "differ")};
}

Outcome ingest_idempotence(const PipelineRun& run, const fs::path& fixture) {
    if (!run.ok) return {false, "pipeline failed"};
    auto before = test::read_text(run.store / "manifest.json");
    auto log_before = test::read_text(run.store / "posts.jsonl");
    std::string out;
    int code = cli_run({"ingest", "--input", fixture.string(), "--format", "jsonl", "--store", run.store.string()},
                       &out);
    auto after = test::read_text(run.store / "manifest.json");
    bool written_zero = out.find("written=0 ") != std::string::npos;
    auto count_before = json::parse(before)["record_count"].get<std::uint64_t>();
    auto count_after = json::parse(after)["record_count"].get<std::uint64_t>();
    bool same_log = test::read_text(run.store / "posts.jsonl") == log_before;
    return {code == 0 && written_zero && count_before == count_after && same_log,
            "count_before=" + std::to_string(count_before) + " count_after=" + std::to_string(count_after) +
                " written_zero=" + (written_zero ? "yes" : "no") + " log_unchanged=" + (same_log ? "yes" : "no")};
}

}  // namespace

int main() {
    int failures = 0;
    auto report = [&](const char* name, const Outcome& o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  " << o.detail << std::endl;
        if (!o.pass) ++failures;
    };
    auto guarded = [&](const char* name, const std::function<Outcome()>& fn) {
        try {
            report(name, fn());
        } catch (const std::exception& e) {
            report(name, {false, std::string("exception: ") + e.what()});
        }
    };

    guarded("lexer-suite", lexer_suite);
    guarded("ngram-conservation", ngram_conservation);
    guarded("classifier-oracle", classifier_oracle);
    guarded("emoticon-precedence", emoticon_precedence);
    guarded("jsd", jsd_properties);

    test::TempDir dir;
    const auto corpus = generate_corpus();
    const auto fixture = dir / "fixture.jsonl";
    test::write_text(fixture, to_jsonl(corpus.posts));
    fs::create_directories(dir / "run1");
    fs::create_directories(dir / "run2");
    PipelineRun first, second;
    guarded("disappointment-ramp-reconstruction", [&] {
        first = run_pipeline(dir / "run1", fixture);
        return reconstruction(corpus, first, dir.path());
    });
    guarded("determinism", [&] {
        second = run_pipeline(dir / "run2", fixture);
        return determinism(first, second);
    });
    guarded("ingest-idempotence", [&] { return ingest_idempotence(first, fixture); });

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
