// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "boolfilter/harness.hpp"
#include "boolfilter/report.hpp"
#include "boolfilter/verify.hpp"

using namespace boolfilter;

namespace {

constexpr std::uint64_t kSeed = 20240601;

constexpr double kEquivalenceTol = 1e-10;
constexpr std::size_t kCases = 100;
constexpr double kMarginalTol = 1e-12;
constexpr double kEntropySearchTol = 1e-8;
constexpr double kMomentTol = 1e-12;
constexpr double kStochasticTol = 1e-12;
constexpr double kHmmTol = 1e-12;
constexpr double kRingParityGap = 0.05;
constexpr double kPlateauLow = 0.88;
constexpr double kPlateauHigh = 0.96;
constexpr double kBkfMinR2 = 0.95;
constexpr double kMfaMaxSlope = 1.2;
constexpr double kMinSpeedup = 100.0;
constexpr double kErParityGap = 0.07;

int failures = 0;

void report(int id, const std::string& title, bool pass, const std::string& detail)
{
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

std::string fmt(const char* format, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

bool check_ok(const CheckResult& c, double tol, std::string& detail)
{
    detail += c.name + " worst=" + fmt("%.3g", c.worst_error) + " n_inst=" + std::to_string(c.instances) + "; ";
    return c.passed && c.instances > 0 && c.worst_error < tol;
}

ExperimentConfig paper_config(std::size_t n)
{
    ExperimentConfig c;
    c.experiment = "acceptance";
    c.graph.n = n;
    c.alpha = 0.2;
    c.p = 0.8;
    c.q = 0.8;
    c.rho = 0.1;
    c.horizon = 20;
    c.trials = 100;
    c.clean_count = 2;
    c.master_seed = kSeed;
    return c;
}

struct Fit {
    double slope;
    double r2;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double m = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    return {sxy / sxx, sxy * sxy / (sxx * syy)};
}

void parity(int id, const std::string& title, GraphFamily family, double gap_limit)
{
    double worst = 0.0;
    std::string detail;
    for (std::size_t n = 5; n <= 10; ++n) {
        auto c = paper_config(n);
        c.graph.family = family;
        c.graph.edge_prob = 0.2;
        c.use_bkf = true;
        const auto r = run_experiment(c);
        const double mfa = r.summary.find(n, Estimator::mfa)->mean_ter;
        const double bkf = r.summary.find(n, Estimator::bkf)->mean_ter;
        worst = std::max(worst, std::abs(mfa - bkf));
        detail += "n=" + std::to_string(n) + " MFA=" + fmt("%.4f", mfa) + " BKF=" + fmt("%.4f", bkf) + "; ";
    }
    report(id, title, worst < gap_limit, detail + "max gap " + fmt("%.4f", worst));
}

} // namespace

int main()
{
    {
        std::string detail;
        const bool ok = check_ok(check_mfa_predict(2, 8, kCases, kSeed), kEquivalenceTol, detail);
        report(1, "mean-field prediction equals exact marginals on product priors, n=2..8", ok, detail);
    }
    {
        std::string detail;
        const bool ok = check_ok(check_mfa_update(2, 8, kCases, kSeed), kEquivalenceTol, detail);
        report(2, "mean-field update equals exact marginals on product priors, n=2..8", ok, detail);
    }
    {
        std::string detail;
        bool ok = check_ok(check_maxent_marginals(10, kCases, kSeed), kMarginalTol, detail);
        ok = check_ok(check_maxent_n2_search(), kEntropySearchTol, detail) && ok;
        ok = check_ok(check_maxent_dominance(4, kCases, kSeed), kMarginalTol, detail) && ok;
        report(3, "product distribution is the maximum-entropy belief with given marginals", ok, detail);
    }
    {
        std::string detail;
        const bool ok = check_ok(check_product_moments(6, kCases, kSeed), kMomentTol, detail);
        report(4, "expected products factor under product beliefs, n<=6", ok, detail);
    }
    {
        std::string detail;
        const bool ok = check_ok(check_column_stochastic(8, kCases, kSeed), kStochasticTol, detail);
        report(5, "transition columns sum to one, n<=8", ok, detail);
    }
    {
        std::string detail;
        const bool ok = check_ok(check_hmm_one_step(6, kCases, kSeed), kHmmTol, detail);
        report(6, "exact filter matches direct 4^n summation, n<=6", ok, detail);
    }

    parity(7, "ring n=5..10 accuracy parity", GraphFamily::ring, kRingParityGap);

    {
        auto c = paper_config(300);
        const auto r = run_experiment(c);
        const double mean = r.summary.find(300, Estimator::mfa)->mean_ter;
        report(8, "ring n=300 mean-field plateau", mean >= kPlateauLow && mean <= kPlateauHigh,
               "mean TER " + fmt("%.4f", mean));
    }

    {
        std::string detail;
        auto exact = paper_config(6);
        exact.use_mfa = false;
        exact.use_bkf = true;
        std::vector<double> ns, log_ms;
        const auto bkf_rows = bench_runtime({6, 7, 8, 9, 10, 11, 12}, exact, 10);
        for (const auto& row : bkf_rows) {
            ns.push_back(static_cast<double>(row.n));
            log_ms.push_back(std::log(row.mean_wall_ms));
        }
        const Fit bkf_fit = least_squares(ns, log_ms);
        detail += "BKF log-linear R2=" + fmt("%.4f", bkf_fit.r2) + "; ";

        auto mean_field = paper_config(50);
        std::vector<double> log_n, log_mfa;
        const auto mfa_rows = bench_runtime({50, 100, 200, 300, 400}, mean_field, 200);
        for (const auto& row : mfa_rows) {
            log_n.push_back(std::log(static_cast<double>(row.n)));
            log_mfa.push_back(std::log(row.mean_wall_ms));
        }
        const Fit mfa_fit = least_squares(log_n, log_mfa);
        detail += "MFA log-log slope=" + fmt("%.3f", mfa_fit.slope) + "; ";

        auto both = paper_config(14);
        both.use_bkf = true;
        const auto at14 = bench_runtime({14}, both, 3);
        const double speedup = at14[1].mean_wall_ms / at14[0].mean_wall_ms;
        detail += "n=14 BKF " + fmt("%.3g", at14[1].mean_wall_ms) + " ms vs MFA " +
                  fmt("%.3g", at14[0].mean_wall_ms) + " ms, speedup " + fmt("%.0f", speedup);
        const bool ok = bkf_fit.r2 > kBkfMinR2 && mfa_fit.slope <= kMfaMaxSlope && speedup >= kMinSpeedup;
        report(9, "runtime scaling", ok, detail);
    }

    parity(10, "Erdos-Renyi n=5..10 accuracy parity", GraphFamily::erdos_renyi, kErParityGap);
    {
        // large Erdos-Renyi curve, recorded as data only
        std::vector<ExperimentResult> curve;
        for (std::size_t n : {10, 20, 50, 100, 200, 300}) {
            auto c = paper_config(n);
            c.experiment = "er_large";
            c.graph.family = GraphFamily::erdos_renyi;
            c.graph.edge_prob = 0.2;
            curve.push_back(run_experiment(c));
        }
        const std::string csv = summary_csv(curve);
        std::ofstream("acceptance_er_large.csv") << csv;
        std::printf("data: Erdos-Renyi mean-field TER vs n (acceptance_er_large.csv)\n%s", csv.c_str());
    }

    {
        bool ok = true;
        for (GraphFamily family : {GraphFamily::ring, GraphFamily::erdos_renyi}) {
            auto c = paper_config(8);
            c.graph.family = family;
            c.trials = 20;
            c.use_bkf = true;
            const auto first = run_experiment(c);
            const auto again = run_experiment(c);
            c.workers = 4;
            const auto parallel = run_experiment(c);
            ok = ok && results_csv({first}) == results_csv({again}) &&
                 results_csv({first}) == results_csv({parallel}) &&
                 summary_csv({first}) == summary_csv({again}) &&
                 summary_csv({first}) == summary_csv({parallel});
        }
        report(11, "byte-identical CSV across repeats and worker counts", ok, "ring and Erdos-Renyi, workers 1 vs 4");
    }

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
