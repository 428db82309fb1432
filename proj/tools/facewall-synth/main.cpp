#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "facewall/synth.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate the seeded synthetic wall corpus (JSONL)", "facewall-synth"};
    facewall::SynthOptions options;
    std::string out;
    app.add_option("--out", out, "Output JSONL file")->required();
    app.add_option("--seed", options.seed)->capture_default_str();
    app.add_option("--users", options.users)->capture_default_str();
    app.add_option("--ramped", options.ramped_users, "Users with a Disappointment ramp")->capture_default_str();
    app.add_option("--first-year", options.first_year)->capture_default_str();
    app.add_option("--last-year", options.last_year)->capture_default_str();
    app.add_option("--ramp-start", options.ramp_start_year)->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    if (options.ramped_users > options.users || options.first_year > options.last_year) {
        std::cerr << "error: inconsistent options\n";
        return 1;
    }
    const auto corpus = facewall::generate_corpus(options);
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file << facewall::to_jsonl(corpus.posts);
    if (!file) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
    }
    std::cout << "posts=" << corpus.posts.size() << " users=" << options.users
              << " ramped=" << corpus.ramped_users.size() << "\n";
    return 0;
}
