#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "facewall/error.hpp"
#include "facewall/ingest.hpp"
#include "facewall/store.hpp"

namespace facewall::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    RunConfig run;
    std::string input;
    std::string format = "jsonl";
    std::string bucket = "month";
    std::string klass;
    std::string out;
    std::string user;
    bool all_users = false;
    std::string what;
    std::string measure = "posts";
};

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::kUsage: return kUsage;
        case ErrorKind::kInput: return kInputError;
        case ErrorKind::kStore: return kStoreError;
        case ErrorKind::kInternal: return kStoreError;
    }
    return kStoreError;
}

void write_output(const fs::path& path, std::string_view content) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file.write(content.data(), static_cast<std::streamsize>(content.size()));
    file.flush();
    if (!file) fail(ErrorKind::kInput, "io", "cannot write " + path.string());
}

AnalysisMeta require_analysis(const Store& store) {
    auto meta = current_analysis(store);
    if (!meta) {
        fail(ErrorKind::kStore, "not-analyzed",
             "store has no analysis covering all records; run `facewall analyze` first");
    }
    return *meta;
}

std::optional<std::string> scope_user(const Options& o, const AnalysisMeta& meta) {
    if (o.user.empty()) return std::nullopt;
    if (!std::binary_search(meta.users.begin(), meta.users.end(), o.user)) {
        fail(ErrorKind::kInput, "unknown-user", o.user);
    }
    return o.user;
}

SeriesMeasure checked_measure(const std::string& name) {
    const auto m = parse_series_measure(name);
    if (!m) fail(ErrorKind::kInput, "unknown-measure", name);
    return *m;
}

int cmd_ingest(const Options& o, std::ostream& out, std::ostream& err) {
    const auto format = parse_corpus_format(o.format);
    if (!format) fail(ErrorKind::kUsage, "bad-format", "--format must be jsonl or csv");
    const auto batch = load_corpus(o.input, *format);
    for (const auto& r : batch.rejected) err << "rejected line " << r.line << ": " << r.reason << "\n";

    auto store = Store::open(o.run.store, /*create=*/true);
    const auto receipt = store.append(batch.posts);
    out << "ingested=" << receipt.written << " rejected=" << batch.rejected.size()
        << " duplicates=" << batch.duplicates_dropped + receipt.skipped << "\n";
    out << "written=" << receipt.written << " count=" << receipt.record_count << "\n";
    return kOk;
}

int cmd_analyze(Options& o, std::ostream& out, std::ostream& err) {
    const auto granularity = parse_granularity(o.bucket);
    if (!granularity) fail(ErrorKind::kUsage, "bad-bucket", "--bucket must be week, month, quarter or year");
    auto& config = o.run.analysis;
    config.granularity = *granularity;
    if (config.n_max == 0 || config.n_max > kMaxNgramOrder) {
        fail(ErrorKind::kUsage, "bad-n", "--ngrams must be in 1.." + std::to_string(kMaxNgramOrder));
    }
    if (!(config.alpha > 0.0)) fail(ErrorKind::kUsage, "bad-alpha", "--alpha must be positive");
    if (o.run.lexicon_path) config.lexicon = EmotionLexicon::load(*o.run.lexicon_path);

    auto store = Store::open(o.run.store, /*create=*/false);
    const auto summary = analyze_store(store, config);
    if (summary.posts > 0 && !summary.model_trained) {
        err << "warning: model=untrainable (fewer than two classes with enough emoticon-labeled posts); "
               "classifying with emoticon and keyword rules only\n";
    }
    out << "users=" << summary.users << " posts=" << summary.posts
        << " model=" << (summary.model_trained ? "trained" : "untrainable") << " config=" << summary.config_hash
        << (summary.cached ? " cached=1" : "") << "\n";
    return kOk;
}

int cmd_chart(const Options& o, std::ostream& out, std::ostream&) {
    const auto cls = parse_series_class(o.klass);
    if (!cls || *cls == SeriesClass::kNeutral) fail(ErrorKind::kInput, "unknown-class", o.klass);
    const auto measure = checked_measure(o.measure);

    const auto store = Store::open(o.run.store, /*create=*/false);
    const auto meta = require_analysis(store);
    const auto user = scope_user(o, meta);
    const auto series = load_series(store, meta, user, measure);
    const auto it = std::find_if(series.begin(), series.end(), [&](const auto& s) { return s.cls == *cls; });
    if (it == series.end()) fail(ErrorKind::kStore, "store-corrupt", "series missing class");

    ChartOptions chart = o.run.chart;
    chart.title = *cls == SeriesClass::kVolume ? "Posts per " + std::string(to_string(meta.granularity))
                                               : std::string(to_string(*cls)) + " n-gram";
    if (!chart.title.empty()) chart.title[0] = static_cast<char>(std::toupper(chart.title[0]));
    chart.scope = user ? *user : "all users";
    write_output(o.out, render_svg(*it, chart));
    out << "chart=" << o.out << " buckets=" << it->points.size() << "\n";
    return kOk;
}

int cmd_detect(const Options& o, std::ostream& out, std::ostream&) {
    o.run.detector.validate();
    const auto store = Store::open(o.run.store, /*create=*/false);
    const auto meta = require_analysis(store);

    std::vector<DeviationReport> reports;
    std::size_t flagged_users = 0, flags = 0;
    for (const auto& user : meta.users) {
        const auto series = load_series(store, meta, user);
        reports.push_back(detect_user(user, series, o.run.detector));
        flags += reports.back().flags.size();
        if (!reports.back().flags.empty()) ++flagged_users;
    }
    write_output(o.out, reports_json(reports, to_string(meta.granularity), meta.config_hash));
    out << "users=" << reports.size() << " flagged_users=" << flagged_users << " flags=" << flags << "\n";
    return kOk;
}

int cmd_export(const Options& o, std::ostream& out, std::ostream&) {
    if (o.what != "series" && o.what != "ngrams") fail(ErrorKind::kInput, "unknown-export", o.what);
    const auto measure = checked_measure(o.measure);

    const auto store = Store::open(o.run.store, /*create=*/false);
    const auto meta = require_analysis(store);
    const auto user = scope_user(o, meta);
    if (o.what == "series") {
        write_output(o.out, series_csv(load_series(store, meta, user, measure)));
    } else {
        write_output(o.out, load_ngram_csv(store, meta, user));
    }
    out << "exported=" << o.what << " out=" << o.out << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"facewall: emotion timelines and behavioural-shift flags for wall-post corpora", "facewall"};
    app.require_subcommand(1);
    Options o;
    auto& rc = o.run;

    auto* ingest = app.add_subcommand("ingest", "Load a JSONL or CSV corpus into a store");
    ingest->add_option("--input", o.input, "Corpus file")->required();
    ingest->add_option("--format", o.format, "jsonl or csv")->capture_default_str();
    ingest->add_option("--store", rc.store, "Store directory (created if absent)")->required();

    auto* analyze = app.add_subcommand("analyze", "Classify posts and build per-user series");
    analyze->add_option("--store", rc.store, "Store directory")->required();
    analyze->add_option("--bucket", o.bucket, "week, month, quarter or year")->capture_default_str();
    analyze->add_option("--ngrams", rc.analysis.n_max, "Highest n-gram order")->capture_default_str();
    analyze->add_option("--lexicon", rc.lexicon_path, "Lexicon JSON (default: built-in)");
    analyze->add_option("--alpha", rc.analysis.alpha, "Naive-Bayes smoothing")->capture_default_str();
    analyze->add_option("--min-train-docs", rc.analysis.min_train_docs, "Minimum documents per class")
        ->capture_default_str();

    auto* chart = app.add_subcommand("chart", "Render one series as SVG");
    chart->add_option("--store", rc.store, "Store directory")->required();
    chart->add_option("--class", o.klass, "happy, sad, love, disappointment or volume")->required();
    chart->add_option("--out", o.out, "Output SVG file")->required();
    auto* chart_user = chart->add_option("--user", o.user, "Single user");
    auto* chart_all = chart->add_flag("--all-users", o.all_users, "All-users aggregate (default)");
    chart_user->excludes(chart_all);
    chart->add_option("--measure", o.measure, "posts or occurrences")->capture_default_str();
    chart->add_option("--width", rc.chart.width)->capture_default_str()->check(CLI::Range(200, 10000));
    chart->add_option("--height", rc.chart.height)->capture_default_str()->check(CLI::Range(150, 10000));

    auto* detect = app.add_subcommand("detect", "Flag anomalous shifts per user");
    detect->add_option("--store", rc.store, "Store directory")->required();
    detect->add_option("--window", rc.detector.window, "Trailing baseline length")->capture_default_str();
    detect->add_option("--z", rc.detector.z_thresh, "z-score threshold")->capture_default_str();
    detect->add_option("--jsd", rc.detector.jsd_thresh, "JSD threshold (bits)")->capture_default_str();
    detect->add_option("--min-hits", rc.detector.min_hits, "Minimum class count to flag")->capture_default_str();
    detect->add_option("--min-total", rc.detector.min_total, "Minimum posts per bucket for JSD")
        ->capture_default_str();
    detect->add_option("--out", o.out, "Report JSON file")->required();

    auto* exp = app.add_subcommand("export", "Export series or n-gram CSV");
    exp->add_option("--store", rc.store, "Store directory")->required();
    exp->add_option("--what", o.what, "series or ngrams")->required();
    exp->add_option("--out", o.out, "Output CSV file")->required();
    exp->add_option("--user", o.user, "Single user (default: all users)");
    exp->add_option("--measure", o.measure, "posts or occurrences (series only)")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kUsage;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(o, out, err);
        if (analyze->parsed()) return cmd_analyze(o, out, err);
        if (chart->parsed()) return cmd_chart(o, out, err);
        if (detect->parsed()) return cmd_detect(o, out, err);
        if (exp->parsed()) return cmd_export(o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kStoreError;
    }
    return kUsage;
}

}  // namespace facewall::cli
