#include "boolfilter/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "boolfilter/bkf.hpp"
#include "boolfilter/maxent.hpp"
#include "boolfilter/mfa.hpp"

namespace boolfilter {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

const char* to_string(Estimator e)
{
    return e == Estimator::mfa ? "MFA" : "BKF";
}

std::string GraphSpec::label() const
{
    switch (family) {
    case GraphFamily::ring:
        return "ring";
    case GraphFamily::erdos_renyi:
        return "er";
    case GraphFamily::file:
        return std::filesystem::path(path).stem().string();
    }
    return "unknown";
}

void ExperimentConfig::validate(std::size_t n) const
{
    if (!is_probability(alpha))
        throw ConfigError("alpha", "must lie in [0,1]");
    if (!is_probability(p))
        throw ConfigError("p", "must lie in [0,1]");
    if (!is_probability(q))
        throw ConfigError("q", "must lie in [0,1]");
    if (!is_probability(rho))
        throw ConfigError("rho", "must lie in [0,1]");
    if (!is_probability(graph.edge_prob))
        throw ConfigError("edge_prob", "must lie in [0,1]");
    if (horizon < 1)
        throw ConfigError("horizon", "must be at least 1");
    if (trials < 1)
        throw ConfigError("trials", "must be at least 1");
    if (workers < 1)
        throw ConfigError("workers", "must be at least 1");
    if (!use_mfa && !use_bkf)
        throw ConfigError("estimators", "enable at least one of MFA, BKF");
    if (graph.family == GraphFamily::ring && n < 3)
        throw ConfigError("n", "ring graphs need n >= 3");
    if (n < 2)
        throw ConfigError("n", "need at least 2 nodes");
    if (clean_count > n - 1)
        throw ConfigError("clean_count", "cannot exceed n-1 = " + std::to_string(n - 1));
    if (use_bkf && n > kMaxJointNodes)
        throw ConfigError("estimators", "BKF supports at most " + std::to_string(kMaxJointNodes) +
                                            " nodes, got n=" + std::to_string(n));
}

double ter(const StateVector& x, const StateVector& x_hat, bool exclude_threat)
{
    if (x.size() != x_hat.size())
        throw DimensionError("ter: state and estimate lengths differ");
    const std::size_t first = exclude_threat ? 1 : 0;
    if (x.size() <= first)
        throw DimensionError("ter: no nodes to evaluate");
    std::size_t wrong = 0;
    for (std::size_t l = first; l < x.size(); ++l)
        wrong += x[l] != x_hat[l];
    return 1.0 - static_cast<double>(wrong) / static_cast<double>(x.size() - first);
}

double stable_sum(std::span<const double> values)
{
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    return sum + comp;
}

Experiment::Experiment(ExperimentConfig config) : config_(std::move(config))
{
    switch (config_.graph.family) {
    case GraphFamily::file:
        if (config_.graph.path.empty())
            throw ConfigError("path", "file graphs need a path");
        shared_graph_ = load_graph(config_.graph.path);
        n_ = shared_graph_->size();
        break;
    case GraphFamily::ring:
        n_ = config_.graph.n;
        config_.validate(n_);
        shared_graph_ = gen_ring(n_, config_.rho);
        break;
    case GraphFamily::erdos_renyi:
        n_ = config_.graph.n;
        break;
    }
    config_.validate(n_);
}

NetworkModel Experiment::graph_for_trial(std::size_t, Rng& rng) const
{
    if (shared_graph_)
        return *shared_graph_;
    return gen_erdos_renyi(n_, config_.graph.edge_prob, config_.rho, rng);
}

TrialRecord Experiment::run_trial(std::size_t trial_index) const
{
    Rng rng = Rng::derive(config_.master_seed, trial_index);
    const NetworkModel model = graph_for_trial(trial_index, rng);
    const ChannelParams channel = config_.channel();

    std::optional<mfa::MeanFieldFilter> mean_field;
    std::optional<bkf::BooleanKalmanFilter> exact;
    const NodeBelief prior = initial_node_belief(n_);
    if (config_.use_mfa)
        mean_field.emplace(model, channel, prior);
    if (config_.use_bkf)
        exact.emplace(model, channel, product_distribution(prior));

    TrialRecord record;
    record.trial = trial_index;
    record.n = n_;
    record.steps.reserve(config_.horizon);
    StateVector x = initial_state(n_);
    for (std::size_t t = 1; t <= config_.horizon; ++t) {
        StepRecord step;
        step.t = t;
        step.action = random_cleaning(n_, config_.clean_count, rng);
        x = step_true_state(model, x, step.action, config_.alpha, rng);
        step.observation = observe(x, channel, rng);
        step.state = x;

        // estimators only ever see (action, observation)
        if (mean_field) {
            const auto start = Clock::now();
            step.mfa_estimate = mean_field->step(step.action, step.observation);
            step.mfa_ms = elapsed_ms(start);
            step.mfa_ter = ter(x, *step.mfa_estimate);
        }
        if (exact) {
            const auto start = Clock::now();
            step.bkf_estimate = exact->step(step.action, step.observation);
            step.bkf_ms = elapsed_ms(start);
            step.bkf_ter = ter(x, *step.bkf_estimate);
        }
        record.steps.push_back(std::move(step));
    }
    return record;
}

ExperimentResult Experiment::run() const
{
    ExperimentResult result;
    result.config = config_;
    result.n = n_;
    result.trials.resize(config_.trials);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= config_.trials)
                return;
            try {
                result.trials[i] = run_trial(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(config_.trials);
                return;
            }
        }
    };
    const std::size_t threads = std::min(config_.workers, config_.trials);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < threads; ++w)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);

    result.summary = summarize(config_, n_, result.trials);
    return result;
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t trial_index)
{
    return Experiment(config).run_trial(trial_index);
}

ExperimentResult run_experiment(const ExperimentConfig& config)
{
    return Experiment(config).run();
}

const SummaryRow* SummaryTable::find(std::size_t n, Estimator e) const
{
    for (const auto& r : rows)
        if (r.n == n && r.estimator == e)
            return &r;
    return nullptr;
}

SummaryTable summarize(const ExperimentConfig& config, std::size_t n, const std::vector<TrialRecord>& trials)
{
    SummaryTable table;
    for (Estimator e : {Estimator::mfa, Estimator::bkf}) {
        if ((e == Estimator::mfa && !config.use_mfa) || (e == Estimator::bkf && !config.use_bkf))
            continue;
        std::vector<double> all;
        std::vector<double> trial_means;
        std::vector<double> trial_ms;
        for (const auto& rec : trials) {
            std::vector<double> ters;
            std::vector<double> ms;
            for (const auto& s : rec.steps) {
                ters.push_back(e == Estimator::mfa ? s.mfa_ter : s.bkf_ter);
                ms.push_back(e == Estimator::mfa ? s.mfa_ms : s.bkf_ms);
            }
            all.insert(all.end(), ters.begin(), ters.end());
            trial_means.push_back(stable_sum(ters) / static_cast<double>(ters.size()));
            trial_ms.push_back(stable_sum(ms));
        }
        SummaryRow row;
        row.experiment = config.experiment;
        row.graph = config.graph.label();
        row.n = n;
        row.estimator = e;
        row.trials = trials.size();
        row.mean_ter = stable_sum(all) / static_cast<double>(all.size());
        const double k = static_cast<double>(trial_means.size());
        if (trial_means.size() > 1) {
            const double mean = stable_sum(trial_means) / k;
            std::vector<double> sq;
            for (double m : trial_means)
                sq.push_back((m - mean) * (m - mean));
            row.stderr_ter = std::sqrt(stable_sum(sq) / (k - 1.0) / k);
        }
        row.mean_wall_ms = stable_sum(trial_ms) / k;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<BenchRow> bench_runtime(const std::vector<std::size_t>& sizes, const ExperimentConfig& base,
                                    std::size_t runs)
{
    if (runs < 1)
        throw ConfigError("runs", "must be at least 1");
    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        if (base.use_bkf && n > kMaxBenchJointNodes)
            throw ConfigError("sizes", "BKF benchmark sizes are capped at " +
                                           std::to_string(kMaxBenchJointNodes) + ", got " +
                                           std::to_string(n));
        ExperimentConfig cfg = base;
        cfg.graph.n = n;
        cfg.trials = runs;
        const Experiment experiment(cfg);
        std::vector<double> mfa_ms;
        std::vector<double> bkf_ms;
        for (std::size_t r = 0; r < runs; ++r) {
            const TrialRecord rec = experiment.run_trial(r);
            double m = 0.0;
            double b = 0.0;
            for (const auto& s : rec.steps) {
                m += s.mfa_ms;
                b += s.bkf_ms;
            }
            mfa_ms.push_back(m);
            bkf_ms.push_back(b);
        }
        const std::string label = cfg.graph.label();
        if (cfg.use_mfa)
            rows.push_back({label, n, Estimator::mfa, runs, stable_sum(mfa_ms) / static_cast<double>(runs)});
        if (cfg.use_bkf)
            rows.push_back({label, n, Estimator::bkf, runs, stable_sum(bkf_ms) / static_cast<double>(runs)});
    }
    return rows;
}

GapSeries gap_probe(const ExperimentConfig& config, std::size_t trial_index)
{
    ExperimentConfig cfg = config;
    cfg.use_mfa = true;
    cfg.use_bkf = true;
    const Experiment experiment(cfg);
    const std::size_t n = experiment.nodes();

    Rng rng = Rng::derive(cfg.master_seed, trial_index);
    const NetworkModel model = experiment.graph_for_trial(trial_index, rng);
    const ChannelParams channel = cfg.channel();

    NodeBelief P = initial_node_belief(n);
    JointBelief pi = product_distribution(P);
    StateVector x = initial_state(n);
    GapSeries gaps;
    gaps.trial = trial_index;
    // same draw order as Experiment::run_trial, so the series follows that trial
    for (std::size_t t = 1; t <= cfg.horizon; ++t) {
        const ActionVector a = random_cleaning(n, cfg.clean_count, rng);
        x = step_true_state(model, x, a, cfg.alpha, rng);
        const ObservationVector y = observe(x, channel, rng);

        const NodeBelief P_prime = mfa::predict(P, model, a, cfg.alpha);
        const JointBelief pi_prior = bkf::predict(pi, model, a, cfg.alpha);
        gaps.after_predict.push_back(max_abs_diff(P_prime.probs, bkf::marginals(pi_prior).probs));

        P = mfa::update(P_prime, y, channel);
        pi = bkf::update(pi_prior, y, channel);
        gaps.after_update.push_back(max_abs_diff(P.probs, bkf::marginals(pi).probs));
    }
    return gaps;
}

} // namespace boolfilter
