#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facewall/lexicon.hpp"
#include "facewall/ngram.hpp"
#include "facewall/store.hpp"
#include "facewall/timeline.hpp"

namespace facewall {

/// Every field that changes derived artifacts. Detector and chart settings
/// are applied at read time and are not part of it.
struct AnalysisConfig {
    Granularity granularity = Granularity::kMonth;
    std::size_t n_max = kDefaultNgramOrder;
    double alpha = 1.0;
    std::size_t min_train_docs = 5;
    std::size_t expansion_k = 50;
    double expansion_theta = 1.0;
    EmotionLexicon lexicon = EmotionLexicon::default_lexicon();

    std::string canonical_json() const;
    /// First 16 hex digits of the SHA-256 of canonical_json().
    std::string hash() const;
};

struct AnalysisSummary {
    std::string config_hash;
    std::size_t users = 0;
    std::size_t posts = 0;
    bool model_trained = false;
    std::string model_note;  // why training was skipped
    bool cached = false;
};

/// Labels every stored post and writes per-user and all-users series,
/// n-gram profiles and labels under the config hash, then records the hash
/// in the manifest. An empty store produces no derived output.
AnalysisSummary analyze_store(Store& store, const AnalysisConfig& config);

/// Metadata of a finished analysis (written last, so its presence marks a
/// complete cache entry).
struct AnalysisMeta {
    std::string config_hash;
    Granularity granularity = Granularity::kMonth;
    std::uint64_t record_count = 0;
    std::vector<std::string> users;  // sorted
    bool model_trained = false;
};

/// The analysis named by the manifest, if it exists and covers every
/// stored record.
std::optional<AnalysisMeta> current_analysis(const Store& store);

/// Series of one user, or of the all-users aggregate when `user_id` is
/// nullopt, in the requested measure.
std::vector<BucketSeries> load_series(const Store& store, const AnalysisMeta& meta,
                                      const std::optional<std::string>& user_id,
                                      SeriesMeasure measure = SeriesMeasure::kPosts);

std::string load_ngram_csv(const Store& store, const AnalysisMeta& meta,
                           const std::optional<std::string>& user_id);

}  // namespace facewall
