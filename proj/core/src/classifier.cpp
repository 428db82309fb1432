#include "facewall/classifier.hpp"

#include <algorithm>

namespace facewall {

std::string_view to_string(LabelMethod method) {
    switch (method) {
        case LabelMethod::kEmoticon: return "emoticon";
        case LabelMethod::kLexicon: return "lexicon";
        case LabelMethod::kModel: return "model";
        case LabelMethod::kNeutral: return "neutral";
    }
    return "?";
}

LabelSet emoticon_label(std::span<const Token> tokens, const EmotionLexicon& lexicon) {
    LabelSet labels;
    for (const auto& token : tokens) {
        if (token.kind != TokenKind::kEmoticon) continue;
        if (const auto c = lexicon.emoticon_class(token.surface)) labels.insert(*c);
    }
    return labels;
}

std::map<EmotionClass, std::size_t> lexicon_match(std::span<const Token> tokens,
                                                  const EmotionLexicon& lexicon) {
    std::map<EmotionClass, std::size_t> hits;
    for (const auto& token : tokens) {
        if (token.kind != TokenKind::kWord) continue;
        if (const auto c = lexicon.word_class(token.surface)) ++hits[*c];
    }
    return hits;
}

PostLabel classify_post(std::span<const Token> tokens, const EmotionLexicon& lexicon,
                        const NBModel* model) {
    PostLabel label;

    if (auto by_emoticon = emoticon_label(tokens, lexicon); !by_emoticon.empty()) {
        for (const auto& token : tokens) {
            if (token.kind != TokenKind::kEmoticon) continue;
            if (const auto c = lexicon.emoticon_class(token.surface)) label.scores[*c] += 1.0;
        }
        label.labels = std::move(by_emoticon);
        label.method = LabelMethod::kEmoticon;
        return label;
    }

    if (const auto hits = lexicon_match(tokens, lexicon); !hits.empty()) {
        std::size_t best = 0;
        for (const auto& [c, n] : hits) best = std::max(best, n);
        for (const auto& [c, n] : hits) {
            label.scores[c] = static_cast<double>(n);
            if (n == best) label.labels.insert(c);
        }
        label.method = LabelMethod::kLexicon;
        return label;
    }

    if (model != nullptr) {
        auto prediction = nb_posterior(*model, tokens);
        if (prediction.known_features > 0) {
            double best = -1.0;
            std::size_t at_best = 0;
            EmotionClass winner = EmotionClass::kNeutral;
            for (const auto& [c, p] : prediction.posterior) {
                if (p > best) {
                    best = p;
                    winner = c;
                    at_best = 1;
                } else if (p == best) {
                    ++at_best;
                }
            }
            label.scores = std::move(prediction.posterior);
            if (at_best == 1) {
                label.labels = {winner};
                label.method = LabelMethod::kModel;
            } else {
                label.labels = {EmotionClass::kNeutral};
                label.method = LabelMethod::kNeutral;
            }
            return label;
        }
    }

    label.labels = {EmotionClass::kNeutral};
    label.method = LabelMethod::kNeutral;
    return label;
}

}  // namespace facewall
