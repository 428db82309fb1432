#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facewall/lexicon.hpp"
#include "facewall/ngram.hpp"

namespace facewall {

/// One distantly supervised example: pruned tokens plus the single class its
/// emoticons imply.
struct TrainingDoc {
    std::vector<Token> tokens;
    EmotionClass label = EmotionClass::kNeutral;
};

struct NBOptions {
    std::size_t n_max = kDefaultNgramOrder;
    double alpha = 1.0;
    std::size_t min_train_docs = 5;
};

/// Multinomial naive Bayes over n-gram features with add-alpha smoothing.
/// Immutable once trained.
class NBModel {
public:
    const std::vector<EmotionClass>& classes() const { return classes_; }
    double alpha() const { return alpha_; }
    std::size_t n_max() const { return n_max_; }
    std::size_t vocabulary_size() const { return vocabulary_.size(); }
    const std::set<NGramKey>& vocabulary() const { return vocabulary_; }

    std::uint64_t doc_count(EmotionClass c) const;
    std::uint64_t total_docs() const;
    std::uint64_t feature_count(EmotionClass c, const NGramKey& key) const;
    std::uint64_t mass(EmotionClass c) const;
    bool in_vocabulary(const NGramKey& key) const { return vocabulary_.count(key) > 0; }

    /// (count + alpha) / (mass + alpha * V)
    double likelihood(EmotionClass c, const NGramKey& key) const;

    /// Stable JSON export: alpha, n_max, sorted vocabulary, per-class
    /// document counts, mass and sparse feature counts.
    std::string to_json() const;
    /// Throws Error{kInput, "bad-model"} on malformed input.
    static NBModel from_json(std::string_view text);

private:
    friend NBModel train_nb(std::span<const TrainingDoc>, const NBOptions&);

    struct ClassStats {
        std::uint64_t docs = 0;
        std::uint64_t mass = 0;
        NGramCounts counts;
    };

    std::vector<EmotionClass> classes_;
    std::map<EmotionClass, ClassStats> stats_;
    std::set<NGramKey> vocabulary_;
    double alpha_ = 1.0;
    std::size_t n_max_ = kDefaultNgramOrder;
};

/// Feature occurrences of a post: n-grams of orders 1..n_max over the tokens
/// with EMOTICON tokens removed (they define the training label).
NGramCounts nb_features(std::span<const Token> tokens, std::size_t n_max);

/// Classes with fewer than min_train_docs documents are dropped. Throws
/// Error{kInput, "untrainable"} when fewer than two classes remain.
NBModel train_nb(std::span<const TrainingDoc> docs, const NBOptions& options = {});

struct NBPrediction {
    std::map<EmotionClass, double> posterior;  // sums to 1
    std::size_t known_features = 0;             // in-vocabulary occurrences used
};

NBPrediction nb_posterior(const NBModel& model, std::span<const Token> tokens);

/// Normalized class posteriors, computed in log space. Out-of-vocabulary
/// features are skipped.
std::map<EmotionClass, double> nb_predict(const NBModel& model, std::span<const Token> tokens);

struct ExpansionEntry {
    NGramKey gram;
    double score = 0.0;  // bits
};

/// Log-odds (base 2) of each vocabulary gram under class c against all other
/// classes pooled. Keeps the top k with score >= theta, ordered by score
/// descending then key.
std::map<EmotionClass, std::vector<ExpansionEntry>> expand_lexicon(const NBModel& model,
                                                                   std::size_t k = 50,
                                                                   double theta = 1.0);

std::string expansion_json(const std::map<EmotionClass, std::vector<ExpansionEntry>>& expansion);

}  // namespace facewall
