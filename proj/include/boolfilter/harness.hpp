#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "boolfilter/belief.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/process.hpp"

namespace boolfilter {

/// Seed used when neither --seed, the config file nor BOOLFILTER_SEED give one.
inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Largest ring the runtime benchmark will hand to the exact filter.
inline constexpr std::size_t kMaxBenchJointNodes = 14;

/// Invalid experiment parameters. `field()` names the offending config key.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class GraphFamily { ring, erdos_renyi, file };
enum class Estimator { mfa, bkf };

const char* to_string(Estimator e);

struct GraphSpec {
    GraphFamily family = GraphFamily::ring;
    std::size_t n = 10;
    double edge_prob = 0.2; // Erdos-Renyi only
    std::string path;       // file only

    /// "ring", "er" or the file stem; used as the `graph` CSV column.
    std::string label() const;
};

struct ExperimentConfig {
    std::string experiment = "experiment";
    GraphSpec graph;
    double alpha = 0.2;
    double p = 0.8;
    double q = 0.8;
    double rho = 0.1;
    std::size_t horizon = 20;
    std::size_t trials = 100;
    std::size_t clean_count = 2;
    bool use_mfa = true;
    bool use_bkf = false;
    std::uint64_t master_seed = kDefaultSeed;
    std::size_t workers = 1;
    /// Record estimator wall time in the CSV outputs. Off by default so
    /// that output files are byte-for-byte reproducible.
    bool timing = false;

    ChannelParams channel() const { return ChannelParams{p, q, alpha}; }

    /// Throws ConfigError. `n` is the resolved node count.
    void validate(std::size_t n) const;
};

struct StepRecord {
    std::size_t t = 0; // 1-based; estimates exist from t = 1 on
    StateVector state;
    ActionVector action; // applied during the transition into `state`
    ObservationVector observation;
    std::optional<StateVector> mfa_estimate;
    std::optional<StateVector> bkf_estimate;
    double mfa_ter = 0.0;
    double bkf_ter = 0.0;
    double mfa_ms = 0.0;
    double bkf_ms = 0.0;
};

struct TrialRecord {
    std::size_t trial = 0;
    std::size_t n = 0;
    std::vector<StepRecord> steps;
};

struct SummaryRow {
    std::string experiment;
    std::string graph;
    std::size_t n = 0;
    Estimator estimator = Estimator::mfa;
    std::size_t trials = 0;
    double mean_ter = 0.0;     // over trials x timesteps
    double stderr_ter = 0.0;   // standard error of the per-trial means
    double mean_wall_ms = 0.0; // per trial, summed over the horizon
};

struct SummaryTable {
    std::vector<SummaryRow> rows;

    const SummaryRow* find(std::size_t n, Estimator e) const;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::size_t n = 0;
    std::vector<TrialRecord> trials;
    SummaryTable summary;
};

/// True estimation rate 1 - |x - x_hat|^2 / m over the evaluated nodes
/// (nodes 1..n-1 when exclude_threat is set, all n otherwise).
double ter(const StateVector& x, const StateVector& x_hat, bool exclude_threat = true);

/// Compensated (Neumaier) sum in iteration order.
double stable_sum(std::span<const double> values);

/// Prepared experiment: the configuration plus any graph shared by all
/// trials. Safe to call from several threads at once.
class Experiment {
public:
    explicit Experiment(ExperimentConfig config);

    const ExperimentConfig& config() const { return config_; }
    std::size_t nodes() const { return n_; }

    /// Graph used by trial `trial_index` (Erdos-Renyi graphs are drawn per trial).
    NetworkModel graph_for_trial(std::size_t trial_index, Rng& rng) const;

    /// Simulates the hidden process and runs every enabled estimator in
    /// lockstep on the same action/observation stream. Deterministic in
    /// (master_seed, trial_index).
    TrialRecord run_trial(std::size_t trial_index) const;

    /// All trials, spread over config().workers threads.
    ExperimentResult run() const;

private:
    ExperimentConfig config_;
    std::size_t n_ = 0;
    std::optional<NetworkModel> shared_graph_;
};

TrialRecord run_trial(const ExperimentConfig& config, std::size_t trial_index);
ExperimentResult run_experiment(const ExperimentConfig& config);

SummaryTable summarize(const ExperimentConfig& config, std::size_t n,
                       const std::vector<TrialRecord>& trials);

struct BenchRow {
    std::string graph;
    std::size_t n = 0;
    Estimator estimator = Estimator::mfa;
    std::size_t runs = 0;
    double mean_wall_ms = 0.0; // per run of `horizon` steps
};

/// Mean estimator wall time per run of config.horizon steps, over `runs`
/// seeded runs per size. Exact filter sizes are capped at kMaxBenchJointNodes.
std::vector<BenchRow> bench_runtime(const std::vector<std::size_t>& sizes, const ExperimentConfig& base,
                                    std::size_t runs = 5);

/// Sup-norm drift between the mean-field belief and the exact marginals
/// along one lockstep trajectory.
struct GapSeries {
    std::size_t trial = 0;
    std::vector<double> after_predict; // |P'_t - X Pi_{t|t-1}|_inf
    std::vector<double> after_update;  // |P_t  - X Pi_{t|t}|_inf
};

GapSeries gap_probe(const ExperimentConfig& config, std::size_t trial_index = 0);

} // namespace boolfilter
