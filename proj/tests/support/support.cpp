#include "support.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "facewall/unicode.hpp"

namespace facewall::test {

namespace fs = std::filesystem;
using Rational = boost::multiprecision::cpp_rational;

TempDir::TempDir() {
    std::random_device rd;
    auto base = fs::temp_directory_path();
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto candidate = base / ("facewall-test-" + std::to_string(rd()) + std::to_string(rd()));
        if (fs::create_directory(candidate)) {
            path_ = candidate;
            return;
        }
    }
    throw std::runtime_error("cannot create temp dir");
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Token word(std::string surface) {
    return Token{TokenKind::kWord, std::move(surface), {}};
}

std::vector<Token> words(std::initializer_list<const char*> surfaces) {
    std::vector<Token> out;
    for (const char* s : surfaces) out.push_back(word(s));
    return out;
}

std::vector<Token> words(const std::vector<std::string>& surfaces) {
    std::vector<Token> out;
    for (const auto& s : surfaces) out.push_back(word(s));
    return out;
}

namespace {

const std::vector<std::string> kPieces = {
    "a", "B", "z", "Q", "é", "É", "ß", "ñ", "ж", "Ж", "λ", "Σ", "語", "日", "ا", "ש",
    "é", "́", "̈", "'", "’", "-", "‐",
    "0", "7", "42", "3.14", "1,000", ".", ",", "!", "?", ";", "\"", "(", ")", "[", "#",
    ":", "=", "<", "3", "D", "-", ")", "(", ":-)", ":(", "<3", "☹", "=)", ":D", ":-(",
    "@", "@bob", "_", "http://", "https://", "www.", "HTTP://", "/x",
    "😀", "👍🏽", "‍", "ﬁ", "Ⅻ", "①",
    " ", " ", " ", "\t", "\n", "\r\n", " ", "　", " ",
};

const std::vector<std::string> kLetters = {
    "a", "b", "c", "d", "e", "h", "k", "m", "o", "p", "r", "s", "t", "u", "y",
    "A", "G", "R", "é", "ü", "ñ", "ж", "и", "λ", "ω", "語", "ß",
};

}  // namespace

std::string random_unicode(std::mt19937_64& rng, std::size_t max_pieces) {
    std::uniform_int_distribution<std::size_t> len(0, max_pieces);
    std::uniform_int_distribution<std::size_t> pick(0, kPieces.size() - 1);
    std::string s;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) s += kPieces[pick(rng)];
    return s;
}

std::string random_word(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::uniform_int_distribution<std::size_t> pick(0, kLetters.size() - 1);
    std::string s;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) s += kLetters[pick(rng)];
    return s;
}

std::vector<Token> random_tokens(std::mt19937_64& rng, std::size_t max_len, std::size_t alphabet) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> sym(0, alphabet - 1);
    std::uniform_int_distribution<int> kind(0, 9);
    std::vector<Token> out;
    for (std::size_t i = 0, n = len(rng); i < n; ++i) {
        // Occasional non-WORD token with a colliding surface exercises kind tagging.
        auto k = kind(rng) == 0 ? TokenKind::kNumber : TokenKind::kWord;
        out.push_back(Token{k, "w" + std::to_string(sym(rng)), {}});
    }
    return out;
}

std::map<EmotionClass, double> brute_force_posterior(std::span<const OracleDoc> docs,
                                                     std::int64_t alpha_num, std::int64_t alpha_den,
                                                     const std::vector<std::string>& query) {
    const Rational alpha(alpha_num, alpha_den);
    std::set<std::string> vocab;
    std::map<EmotionClass, std::int64_t> doc_count;
    std::map<EmotionClass, std::map<std::string, std::int64_t>> counts;
    std::map<EmotionClass, std::int64_t> mass;
    for (const auto& d : docs) {
        ++doc_count[d.label];
        for (const auto& w : d.words) {
            vocab.insert(w);
            ++counts[d.label][w];
            ++mass[d.label];
        }
    }
    const Rational v(static_cast<std::int64_t>(vocab.size()));
    const Rational n(static_cast<std::int64_t>(docs.size()));

    std::map<EmotionClass, Rational> joint;
    Rational evidence = 0;
    for (const auto& [cls, dc] : doc_count) {
        Rational p = Rational(dc) / n;
        for (const auto& w : query) {
            if (!vocab.count(w)) continue;
            p *= (Rational(counts[cls][w]) + alpha) / (Rational(mass[cls]) + alpha * v);
        }
        joint[cls] = p;
        evidence += p;
    }
    std::map<EmotionClass, double> out;
    for (const auto& [cls, p] : joint) out[cls] = static_cast<double>(Rational(p / evidence));
    return out;
}

OracleSweep nb_oracle_sweep(std::uint64_t first_seed, std::size_t corpora) {
    static constexpr std::array<std::pair<std::int64_t, std::int64_t>, 4> kAlphas = {
        std::pair<std::int64_t, std::int64_t>{1, 1}, {1, 2}, {2, 1}, {1, 10}};
    OracleSweep sweep;
    for (std::uint64_t seed = first_seed; seed < first_seed + corpora; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> vocab_size(1, 4), doc_count(2, 4), doc_len(0, 3);
        const int v = vocab_size(rng);
        std::uniform_int_distribution<int> sym(0, v - 1);
        std::bernoulli_distribution coin(0.5);

        std::vector<OracleDoc> docs;
        const int n = doc_count(rng);
        for (int d = 0; d < n; ++d) {
            OracleDoc doc;
            // First two docs pin both classes so the corpus is trainable.
            doc.label = d == 0 ? EmotionClass::kHappy
                        : d == 1 ? EmotionClass::kSad
                                 : (coin(rng) ? EmotionClass::kHappy : EmotionClass::kSad);
            for (int k = doc_len(rng); k > 0; --k) doc.words.push_back("w" + std::to_string(sym(rng)));
            docs.push_back(std::move(doc));
        }
        const auto [an, ad] = kAlphas[seed % kAlphas.size()];

        std::vector<TrainingDoc> training;
        for (const auto& d : docs) training.push_back({words(d.words), d.label});
        auto model = train_nb(training, NBOptions{1, static_cast<double>(an) / static_cast<double>(ad), 1});

        std::vector<std::string> alphabet;
        for (int s = 0; s < v; ++s) alphabet.push_back("w" + std::to_string(s));
        alphabet.push_back("unseen");
        std::vector<std::vector<std::string>> queries = {{}};
        for (const auto& a : alphabet) {
            queries.push_back({a});
            for (const auto& b : alphabet) queries.push_back({a, b});
        }
        for (const auto& q : queries) {
            auto expected = brute_force_posterior(docs, an, ad, q);
            auto got = nb_predict(model, words(q));
            for (const auto& [cls, p] : expected) {
                auto it = got.find(cls);
                double err = it == got.end() ? 1.0 : std::abs(it->second - p);
                sweep.max_error = std::max(sweep.max_error, err);
            }
            if (got.size() != expected.size()) sweep.max_error = std::max(sweep.max_error, 1.0);
            ++sweep.comparisons;
        }
        ++sweep.corpora;
    }
    return sweep;
}

// Spans are ordered, disjoint, and everything between them is whitespace.
bool spans_partition(std::string_view text, const std::vector<Token>& tokens) {
    auto cps = unicode::normalize_nfc(unicode::decode_utf8(text));
    std::size_t pos = 0;
    for (const auto& t : tokens) {
        if (t.span.start < pos || t.span.end <= t.span.start || t.span.end > cps.size()) return false;
        for (; pos < t.span.start; ++pos) {
            if (!unicode::is_whitespace(cps[pos])) return false;
        }
        auto slice = unicode::encode_utf8(cps.substr(t.span.start, t.span.end - t.span.start));
        auto expect = t.kind == TokenKind::kWord ? unicode::encode_utf8(unicode::fold_case(
                                                       cps.substr(t.span.start, t.span.end - t.span.start)))
                                                 : slice;
        if (t.surface != expect) return false;
        pos = t.span.end;
    }
    for (; pos < cps.size(); ++pos) {
        if (!unicode::is_whitespace(cps[pos])) return false;
    }
    return true;
}

double reference_jsd(std::span<const double> p, std::span<const double> q) {
    long double sp = 0, sq = 0;
    for (double x : p) sp += x;
    for (double x : q) sq += x;
    long double kl_pm = 0, kl_qm = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        long double a = p[i] / sp, b = q[i] / sq, m = (a + b) / 2;
        if (a > 0) kl_pm += a * std::log(a / m);
        if (b > 0) kl_qm += b * std::log(b / m);
    }
    return static_cast<double>((kl_pm + kl_qm) / 2 / std::log(2.0L));
}

}  // namespace facewall::test
