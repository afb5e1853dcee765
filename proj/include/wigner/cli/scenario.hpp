#pragma once

#include "wigner/cli/config.hpp"

#include <filesystem>
#include <iosfwd>

namespace wigner::cli {

// Executes a scenario and writes CSV tables, binary fields and manifest.json into the output directory.
void run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& out, std::ostream& log);

struct CompareSummary {
    double max_field_delta = 0.0;
    double max_focal_ratio_deviation = 0.0;  // max |A/B - 1|
    bool order_mismatch = false;
};

// Compares two run directories and writes comparison.csv and comparison.json into `out`.
CompareSummary compare_runs(const std::filesystem::path& a, const std::filesystem::path& b,
                            const std::filesystem::path& out, std::ostream& log);

}  // namespace wigner::cli
