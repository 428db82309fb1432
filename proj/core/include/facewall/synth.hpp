#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "facewall/ingest.hpp"

namespace facewall {

/// Seeded synthetic wall corpus. Every user posts every month between
/// first_year and last_year with a fixed per-user count for each emotion
/// class (Neutral volume jitters). Ramped users add a linearly growing number
/// of Disappointment posts from ramp_start_year on. Emotional posts are a
/// mix of emoticon posts, keyword posts and posts carrying only
/// class-flavoured vocabulary, so all three classifier stages take part.
struct SynthOptions {
    std::uint64_t seed = 20190826;
    std::size_t users = 20;
    std::size_t ramped_users = 10;
    int first_year = 2010;
    int last_year = 2016;
    int ramp_start_year = 2014;
    double ramp_min_slope = 0.35;  // extra Disappointment posts per month
    double ramp_max_slope = 0.55;
};

struct SynthCorpus {
    std::vector<RawPost> posts;  // sorted by (timestamp, user)
    std::vector<std::string> ramped_users;
    std::vector<std::string> control_users;
};

SynthCorpus generate_corpus(const SynthOptions& options = {});

/// One JSON object per line, as accepted by `facewall ingest --format jsonl`.
std::string to_jsonl(std::span<const RawPost> posts);

}  // namespace facewall
