#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string_view>

#include "facewall/lexicon.hpp"
#include "facewall/naive_bayes.hpp"

namespace facewall {

using LabelSet = std::set<EmotionClass>;

enum class LabelMethod { kEmoticon, kLexicon, kModel, kNeutral };

std::string_view to_string(LabelMethod method);

struct PostLabel {
    LabelSet labels;
    LabelMethod method = LabelMethod::kNeutral;
    /// Hit counts for emoticon/lexicon labels, posteriors for model labels.
    std::map<EmotionClass, double> scores;
};

/// Classes whose emoticons occur in the post; an emoticon speaks for the
/// whole post.
LabelSet emoticon_label(std::span<const Token> tokens, const EmotionLexicon& lexicon);

/// WORD hits per class; classes without hits are absent.
std::map<EmotionClass, std::size_t> lexicon_match(std::span<const Token> tokens,
                                                  const EmotionLexicon& lexicon);

/// Cascade: emoticons, then keyword hits (every class tied at the maximum),
/// then the model when the post has at least one in-vocabulary feature.
/// Exact posterior ties and posts without evidence come out Neutral.
PostLabel classify_post(std::span<const Token> tokens, const EmotionLexicon& lexicon,
                        const NBModel* model = nullptr);

}  // namespace facewall
