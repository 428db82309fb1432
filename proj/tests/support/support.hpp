#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facewall/lexer.hpp"
#include "facewall/lexicon.hpp"
#include "facewall/naive_bayes.hpp"

namespace facewall::test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& content);
std::string read_text(const std::filesystem::path& path);

Token word(std::string surface);
std::vector<Token> words(std::initializer_list<const char*> surfaces);
std::vector<Token> words(const std::vector<std::string>& surfaces);

/// Random text drawn from a pool mixing scripts, marks, digits, punctuation,
/// emoticon fragments, URL and mention prefixes and several kinds of space.
std::string random_unicode(std::mt19937_64& rng, std::size_t max_pieces);

/// Random lowercase-or-mixed-case word of letters only (several scripts).
std::string random_word(std::mt19937_64& rng);

/// Token spans are ordered and disjoint, only whitespace lies between them,
/// and each surface is its (case-folded, for WORD) slice of the NFC text.
bool spans_partition(std::string_view text, const std::vector<Token>& tokens);

std::vector<Token> random_tokens(std::mt19937_64& rng, std::size_t max_len, std::size_t alphabet);

/// Exact posterior of a unigram multinomial NB: priors are class document
/// shares, likelihoods (count + alpha) / (mass + alpha * V), out-of-vocabulary
/// query words ignored. Evaluated in rational arithmetic, converted at the end.
struct OracleDoc {
    std::vector<std::string> words;
    EmotionClass label;
};

std::map<EmotionClass, double> brute_force_posterior(std::span<const OracleDoc> docs,
                                                     std::int64_t alpha_num, std::int64_t alpha_den,
                                                     const std::vector<std::string>& query);

struct OracleSweep {
    std::size_t corpora = 0;
    std::size_t comparisons = 0;
    double max_error = 0.0;
};

/// Seeded corpora with vocabulary <= 4, two classes, <= 4 docs of length
/// <= 3; every query of length <= 2 over the vocabulary plus one unseen word
/// is compared against brute_force_posterior.
OracleSweep nb_oracle_sweep(std::uint64_t first_seed, std::size_t corpora);

/// Jensen-Shannon divergence in bits from the textbook definition:
/// 0.5 KL(P||M) + 0.5 KL(Q||M), M the midpoint, in long double.
double reference_jsd(std::span<const double> p, std::span<const double> q);

}  // namespace facewall::test
