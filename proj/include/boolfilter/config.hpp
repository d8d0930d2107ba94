#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "boolfilter/harness.hpp"

namespace boolfilter {

/// Contents of a run configuration file. Keys (all optional):
///   experiment, graph ("ring" | "er" | "file"), n, sizes, edge_prob,
///   graph_path, alpha, p, q, rho, horizon, trials, clean_count,
///   estimators (["MFA", "BKF"]), master_seed, workers, timing, gap_probe
/// Command-line flags use the same names with '_' spelled '-'.
struct RunConfig {
    ExperimentConfig base;
    std::vector<std::size_t> sizes; // sweep over n; empty means base.graph.n
    bool gap_probe = false;
    bool seed_given = false;

    /// One experiment per swept size.
    std::vector<ExperimentConfig> expand() const;
};

/// Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

GraphFamily parse_family(const std::string& name);
/// Accepts "MFA", "BKF" (any case).
Estimator parse_estimator(const std::string& name);
void set_estimators(ExperimentConfig& config, const std::vector<std::string>& names);

} // namespace boolfilter
