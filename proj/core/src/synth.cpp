#include "facewall/synth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <span>
#include <string_view>
#include <random>

#include "facewall/store.hpp"

namespace facewall {

namespace {

using namespace std::chrono;

// Vocabularies are disjoint so the model never confuses classes, and the
// neutral vocabulary never appears in emoticon-labeled (training) posts.
constexpr std::array kHappyWords = {"sunshine", "party", "awesome", "fun", "weekend", "laughing",
                                    "great", "celebrate", "beach", "smile"};
constexpr std::array kSadWords = {"miss", "lonely", "crying", "rainy", "goodbye", "hurt",
                                  "lost", "tears", "funeral", "alone"};
constexpr std::array kLoveWords = {"darling", "sweetheart", "hugs", "kisses", "forever", "anniversary",
                                   "together", "babe", "heart", "adore"};
constexpr std::array kDisappointedWords = {"again", "failed", "useless", "refund", "cancelled",
                                           "broken", "late", "worst", "complaint", "waiting"};
constexpr std::array kNeutralWords = {"meeting", "report", "bus", "lunch", "schedule", "office",
                                      "weather", "news", "train", "shopping", "groceries", "update",
                                      "photo", "match", "traffic", "dinner"};
constexpr std::array kFillers = {"the", "a", "an", "!", ".", "..."};

constexpr std::array kHappyEmoticons = {":-)", ":)", "=)", ":D"};
constexpr std::array kSadEmoticons = {"☹", ":-(", ":(", "=("};
constexpr std::array kLoveEmoticons = {"<3"};

struct ClassQuota {
    int happy, sad, love, disappointment, neutral_base;
};

class PostWriter {
public:
    explicit PostWriter(std::mt19937_64& rng) : rng_(rng) {}

    std::string words(std::span<const char* const> vocab, int lo, int hi) {
        const int n = uniform(lo, hi);
        std::string out;
        for (int i = 0; i < n; ++i) {
            if (!out.empty()) out += ' ';
            std::string w = vocab[static_cast<std::size_t>(uniform(0, static_cast<int>(vocab.size()) - 1))];
            if (chance(0.15)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
            out += w;
            if (chance(0.1)) {
                out += ' ';
                out += pick(kFillers);
            }
        }
        return out;
    }

    std::string decorate(std::string text) {
        if (chance(0.08)) text += " https://example.org/p/" + std::to_string(uniform(1000, 9999));
        if (chance(0.08)) text = "@friend" + std::to_string(uniform(1, 99)) + " " + text;
        return text;
    }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    const char* pick(std::span<const char* const> items) {
        return items[static_cast<std::size_t>(uniform(0, static_cast<int>(items.size()) - 1))];
    }

private:
    std::mt19937_64& rng_;
};

/// Emoticon post, keyword post or vocabulary-only post. Classes without
/// emoticons always get a keyword.
std::string emotional(PostWriter& writer, std::span<const char* const> vocab, std::string_view keyword,
                      std::span<const char* const> emoticons) {
    const int style = writer.uniform(0, 3);
    if (!emoticons.empty() && style <= 1) {
        return writer.decorate(writer.words(vocab, 2, 6) + " " + writer.pick(emoticons));
    }
    if (emoticons.empty() || style == 2) {
        std::string text = writer.words(vocab, 1, 4);
        text += writer.chance(0.5) ? " " : " so ";
        text += keyword;
        return writer.decorate(text);
    }
    return writer.decorate(writer.words(vocab, 2, 5));
}

}  // namespace

SynthCorpus generate_corpus(const SynthOptions& options) {
    std::mt19937_64 rng(options.seed);
    PostWriter writer(rng);
    SynthCorpus corpus;

    const int total_months = (options.last_year - options.first_year + 1) * 12;
    const int ramp_first_month = (options.ramp_start_year - options.first_year) * 12;

    for (std::size_t u = 0; u < options.users; ++u) {
        char id[32];
        std::snprintf(id, sizeof id, "user%02zu", u + 1);
        const std::string user(id);
        const bool ramped = u < options.ramped_users;
        (ramped ? corpus.ramped_users : corpus.control_users).push_back(user);

        const ClassQuota quota{writer.uniform(5, 8), writer.uniform(2, 4), writer.uniform(2, 4),
                               writer.uniform(1, 2), writer.uniform(13, 17)};
        const double slope =
            std::uniform_real_distribution<double>(options.ramp_min_slope, options.ramp_max_slope)(rng);

        for (int m = 0; m < total_months; ++m) {
            const year_month ym = year{options.first_year} / January + months{m};
            const sys_days month_start{ym / 1};
            const sys_days month_end{(ym + months{1}) / 1};

            int disappointment = quota.disappointment;
            if (ramped && m >= ramp_first_month) {
                disappointment += static_cast<int>(std::floor(slope * (m - ramp_first_month + 1)));
            }
            const int neutral = quota.neutral_base + writer.uniform(-3, 3);

            std::vector<std::string> texts;
            for (int i = 0; i < quota.happy; ++i) texts.push_back(emotional(writer, kHappyWords, "happy", kHappyEmoticons));
            for (int i = 0; i < quota.sad; ++i) texts.push_back(emotional(writer, kSadWords, "sad", kSadEmoticons));
            for (int i = 0; i < quota.love; ++i) texts.push_back(emotional(writer, kLoveWords, "love", kLoveEmoticons));
            for (int i = 0; i < disappointment; ++i) {
                texts.push_back(emotional(writer, kDisappointedWords, writer.chance(0.5) ? "disappointed" : "anger", {}));
            }
            for (int i = 0; i < neutral; ++i) texts.push_back(writer.decorate(writer.words(kNeutralWords, 2, 7)));
            std::shuffle(texts.begin(), texts.end(), rng);

            // Distinct instants: one random second inside each equal slot.
            const auto month_seconds = duration_cast<seconds>(month_end - month_start).count();
            const auto slot = month_seconds / static_cast<long long>(texts.size());
            for (std::size_t i = 0; i < texts.size(); ++i) {
                const auto offset = static_cast<long long>(i) * slot +
                                    std::uniform_int_distribution<long long>(0, slot - 1)(rng);
                const Timestamp ts = Timestamp{month_start} + seconds{offset};
                corpus.posts.push_back(RawPost{user, ts, std::move(texts[i]), std::string("synthetic")});
            }
        }
    }
    std::sort(corpus.posts.begin(), corpus.posts.end(), [](const RawPost& a, const RawPost& b) {
        return a.timestamp != b.timestamp ? a.timestamp < b.timestamp : a.user_id < b.user_id;
    });
    return corpus;
}

std::string to_jsonl(std::span<const RawPost> posts) {
    std::string out;
    for (const auto& post : posts) {
        out += post_to_json(post);
        out += '\n';
    }
    return out;
}

}  // namespace facewall
