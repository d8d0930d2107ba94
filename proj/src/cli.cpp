#include "boolfilter/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "boolfilter/config.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/harness.hpp"
#include "boolfilter/io.hpp"
#include "boolfilter/report.hpp"
#include "boolfilter/verify.hpp"

namespace boolfilter {

namespace {

namespace fs = std::filesystem;

std::uint64_t fallback_seed()
{
    if (const char* env = std::getenv("BOOLFILTER_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size())
                return v;
        } catch (const std::exception&) {
        }
        throw ConfigError("BOOLFILTER_SEED", "expected an unsigned integer");
    }
    return kDefaultSeed;
}

/// Experiment parameters shared by `run` and `bench`; every flag maps to
/// the config key of the same name.
struct ParamFlags {
    std::optional<std::string> experiment;
    std::optional<std::string> graph;
    std::optional<std::size_t> n;
    std::vector<std::size_t> sizes;
    std::optional<double> edge_prob;
    std::optional<std::string> graph_path;
    std::optional<double> alpha, p, q, rho;
    std::optional<std::size_t> horizon, trials, clean_count, workers;
    std::vector<std::string> estimators;
    std::optional<std::uint64_t> seed;
    bool timing = false;

    void attach(CLI::App* app)
    {
        app->add_option("--experiment", experiment, "Experiment name written to the CSV");
        app->add_option("--graph", graph, "Graph family: ring, er or file");
        app->add_option("--n", n, "Node count, including the external threat node");
        app->add_option("--sizes", sizes, "Sweep over these node counts")->delimiter(',');
        app->add_option("--edge-prob,--edge_prob", edge_prob, "Erdos-Renyi edge probability");
        app->add_option("--graph-path,--graph_path", graph_path, "Graph file (JSON) for --graph file");
        app->add_option("--alpha", alpha, "Cleaning failure probability");
        app->add_option("--p", p, "IDS true-positive probability");
        app->add_option("--q", q, "IDS true-negative probability");
        app->add_option("--rho", rho, "Attack success probability per edge");
        app->add_option("--horizon", horizon, "Time steps per trial");
        app->add_option("--trials", trials, "Independent trials");
        app->add_option("--clean-count,--clean_count", clean_count, "Nodes cleaned per step");
        app->add_option("--workers", workers, "Worker threads (results do not depend on this)");
        app->add_option("--estimators", estimators, "Estimators to run: MFA, BKF")->delimiter(',');
        app->add_option("--seed,--master-seed,--master_seed", seed, "Master seed");
        app->add_flag("--timing", timing, "Record estimator wall time in the CSV outputs");
    }

    void apply(RunConfig& rc) const
    {
        ExperimentConfig& c = rc.base;
        if (experiment)
            c.experiment = *experiment;
        if (graph)
            c.graph.family = parse_family(*graph);
        if (n) {
            c.graph.n = *n;
            rc.sizes.clear();
        }
        if (!sizes.empty())
            rc.sizes = sizes;
        if (edge_prob)
            c.graph.edge_prob = *edge_prob;
        if (graph_path) {
            c.graph.path = *graph_path;
            if (!graph)
                c.graph.family = GraphFamily::file;
        }
        if (alpha)
            c.alpha = *alpha;
        if (p)
            c.p = *p;
        if (q)
            c.q = *q;
        if (rho)
            c.rho = *rho;
        if (horizon)
            c.horizon = *horizon;
        if (trials)
            c.trials = *trials;
        if (clean_count)
            c.clean_count = *clean_count;
        if (workers)
            c.workers = *workers;
        if (!estimators.empty())
            set_estimators(c, estimators);
        if (timing)
            c.timing = true;
        if (seed) {
            c.master_seed = *seed;
            rc.seed_given = true;
        }
        if (!rc.seed_given)
            c.master_seed = fallback_seed();
    }
};

int cmd_graphgen(const std::string& family, std::size_t n, double edge_prob, double rho,
                 std::optional<std::uint64_t> seed, const std::string& out_path, std::ostream& out)
{
    NetworkModel model = [&] {
        const GraphFamily f = parse_family(family);
        if (f == GraphFamily::ring)
            return gen_ring(n, rho);
        if (f == GraphFamily::erdos_renyi) {
            Rng rng(seed ? *seed : fallback_seed());
            return gen_erdos_renyi(n, edge_prob, rho, rng);
        }
        throw ConfigError("family", "graphgen supports ring and er");
    }();
    if (out_path.empty())
        out << format_graph(model);
    else
        write_graph(model, out_path);
    return kExitOk;
}

int cmd_run(RunConfig rc, const std::string& out_dir, bool plot, std::ostream& out)
{
    std::vector<ExperimentResult> results;
    std::vector<GapSeries> gaps;
    for (const ExperimentConfig& cfg : rc.expand()) {
        results.push_back(run_experiment(cfg));
        if (rc.gap_probe) {
            if (results.size() > 1)
                throw ConfigError("gap_probe", "gap probe runs on a single graph size");
            for (std::size_t t = 0; t < cfg.trials; ++t)
                gaps.push_back(gap_probe(cfg, t));
        }
    }
    // everything is computed before the first file is written
    const std::string results_text = results_csv(results);
    const std::string summary_text = summary_csv(results);
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file_atomic(dir / "results.csv", results_text);
    write_file_atomic(dir / "summary.csv", summary_text);
    if (rc.gap_probe)
        write_file_atomic(dir / "gap.csv", gap_csv(results.front().config, results.front().n, gaps));
    if (plot)
        write_file_atomic(dir / "ter.svg", ter_svg(results));
    out << summary_text;
    return kExitOk;
}

int cmd_verify(std::size_t max_n, std::size_t cases, std::uint64_t seed, std::ostream& out)
{
    if (max_n < 1 || max_n > kMaxVerifyNodes)
        throw ConfigError("max-n", "must lie in 1.." + std::to_string(kMaxVerifyNodes));
    const VerifyReport report = run_verification(VerifyOptions{max_n, cases, seed});
    report.print(out);
    return report.passed() ? kExitOk : kExitVerification;
}

int cmd_bench(RunConfig rc, std::size_t runs, const std::string& out_path, bool plot, std::ostream& out)
{
    std::vector<std::size_t> sizes = rc.sizes;
    if (sizes.empty())
        sizes = {rc.base.graph.n};
    const auto rows = bench_runtime(sizes, rc.base, runs);
    const std::string text = bench_csv(rows);
    if (!out_path.empty()) {
        write_file_atomic(out_path, text);
        if (plot) {
            fs::path svg(out_path);
            svg.replace_extension(".svg");
            write_file_atomic(svg, bench_svg(rows));
        }
    }
    out << text;
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"State estimation of attack spread under noisy intrusion detection"};
    app.require_subcommand(1);

    // graphgen
    auto* graphgen = app.add_subcommand("graphgen", "Generate a ring or Erdos-Renyi attack graph");
    std::string gg_family;
    std::size_t gg_n = 10;
    double gg_edge_prob = 0.2;
    double gg_rho = 0.1;
    std::optional<std::uint64_t> gg_seed;
    std::string gg_out;
    graphgen->add_option("family", gg_family, "ring or er")->required();
    graphgen->add_option("--n", gg_n, "Node count, including the external threat node");
    graphgen->add_option("--edge-prob,--edge_prob", gg_edge_prob, "Erdos-Renyi edge probability");
    graphgen->add_option("--rho", gg_rho, "Attack success probability per edge");
    graphgen->add_option("--seed", gg_seed, "Seed for Erdos-Renyi sampling");
    graphgen->add_option("--out", gg_out, "Output file (stdout if omitted)");

    // run
    auto* run = app.add_subcommand("run", "Run an experiment and write results/summary CSV");
    std::string run_config;
    std::string run_out;
    bool run_plot = false;
    bool run_gap = false;
    ParamFlags run_flags;
    run->add_option("--config", run_config, "JSON configuration file")->check(CLI::ExistingFile);
    run->add_option("--out", run_out, "Output directory")->required();
    run->add_flag("--plot", run_plot, "Also write ter.svg");
    run->add_flag("--gap-probe,--gap_probe", run_gap, "Also write gap.csv (mean-field vs exact marginals)");
    run_flags.attach(run);

    // verify
    auto* verify = app.add_subcommand("verify", "Run the exactness oracles and report worst errors");
    std::size_t v_max_n = 6;
    std::size_t v_cases = 50;
    std::optional<std::uint64_t> v_seed;
    verify->add_option("--max-n,--max_n", v_max_n, "Largest node count checked (<= 10)");
    verify->add_option("--cases", v_cases, "Random instances per node count");
    verify->add_option("--seed", v_seed, "Seed for instance generation");

    // bench
    auto* bench = app.add_subcommand("bench", "Time the estimators on growing graphs");
    std::string b_out;
    std::size_t b_runs = 5;
    bool b_plot = false;
    ParamFlags bench_flags;
    bench->add_option("--out", b_out, "Output CSV file (stdout only if omitted)");
    bench->add_option("--runs", b_runs, "Seeded runs per size");
    bench->add_flag("--plot", b_plot, "Also write an SVG next to --out");
    bench_flags.attach(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*graphgen)
            return cmd_graphgen(gg_family, gg_n, gg_edge_prob, gg_rho, gg_seed, gg_out, out);
        if (*run) {
            RunConfig rc = run_config.empty() ? RunConfig{} : load_config(run_config);
            run_flags.apply(rc);
            if (run_gap)
                rc.gap_probe = true;
            return cmd_run(std::move(rc), run_out, run_plot, out);
        }
        if (*verify)
            return cmd_verify(v_max_n, v_cases, v_seed ? *v_seed : fallback_seed(), out);
        if (*bench) {
            RunConfig rc;
            rc.base.trials = b_runs;
            rc.base.use_bkf = true;
            rc.sizes = {6, 7, 8, 9, 10, 11, 12, 13, 14};
            bench_flags.apply(rc);
            return cmd_bench(std::move(rc), b_runs, b_out, b_plot, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ModelError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "runtime failure: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitValidation;
}

} // namespace boolfilter
