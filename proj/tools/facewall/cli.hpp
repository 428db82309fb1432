#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "facewall/analysis.hpp"
#include "facewall/chart.hpp"
#include "facewall/detect.hpp"

namespace facewall::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputError = 2,
    kStoreError = 3,
};

/// Everything a command may be configured with. Only `analysis` feeds the
/// config hash; the rest is applied when reading derived artifacts.
struct RunConfig {
    std::filesystem::path store;
    AnalysisConfig analysis;
    std::optional<std::filesystem::path> lexicon_path;
    DetectorConfig detector;
    ChartOptions chart;
};

/// Runs `facewall <subcommand> ...` with `args` excluding the program name.
/// Summaries go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace facewall::cli
