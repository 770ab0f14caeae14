#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "randattr/io.hpp"

namespace randattr {

inline constexpr const char* kVersion = "0.1.0";

struct ExperimentConfig {
    json raw;
    SystemSpec system;
    std::uint64_t seed_base = 1;
    int count = 1;
    std::string task;
    json params;

    std::vector<std::uint64_t> seeds() const;
};

/// Parses and validates a config document; honors RA_SEED_OVERRIDE.
ExperimentConfig parse_config(const json& doc);

/// Executes the configured task, writing clouds (CSV), reports (JSON), a
/// summary table (CSV) and a manifest into out_dir.
/// Returns 0 on success/pass, 2 on fail verdict, 3 on inconclusive.
int run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                   int workers);

/// Prints a deterministic human-readable summary of a finished run.
/// Returns 0, or 1 when the directory has no manifest.
int report_run(const std::filesystem::path& run_dir, std::ostream& os);

/// Map-style parallel loop; fn(i) must be pure per index. Results are
/// identical to the sequential order for any worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace randattr
