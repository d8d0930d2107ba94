#include "boolfilter/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "boolfilter/bkf.hpp"
#include "boolfilter/maxent.hpp"
#include "boolfilter/mfa.hpp"
#include "boolfilter/oracle.hpp"
#include "boolfilter/rng.hpp"

namespace boolfilter {

namespace {

enum Suite : std::uint64_t {
    kMarginals = 1,
    kDominance,
    kMoments,
    kPredict,
    kUpdate,
    kColumns,
    kHmm,
};

Rng stream(std::uint64_t seed, Suite suite, std::size_t n)
{
    return Rng::derive(seed, (static_cast<std::uint64_t>(suite) << 32) | n);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b)
{
    // a wrong length or a NaN must count as a mismatch, and std::max drops NaN
    if (a.size() != b.size())
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (!(d <= worst))
            worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
    }
    return worst;
}

void finish(CheckResult& r)
{
    r.passed = std::isfinite(r.worst_error) && r.worst_error < r.tolerance;
}

ChannelParams random_channel(Rng& rng)
{
    auto pick = [&rng] {
        const double u = rng.uniform();
        if (u < 0.1)
            return 1.0;
        if (u < 0.2)
            return 0.5;
        return rng.uniform();
    };
    return ChannelParams{pick(), pick(), rng.uniform()};
}

bool mfa_update_defined(const NodeBelief& P, const ObservationVector& y, const ChannelParams& c)
{
    for (std::size_t l = 0; l < P.size(); ++l) {
        const double ev = y[l] ? c.p * P[l] + (1.0 - c.q) * (1.0 - P[l])
                               : (1.0 - c.p) * P[l] + c.q * (1.0 - P[l]);
        if (!(ev > 0.0))
            return false;
    }
    return true;
}

} // namespace

VerifyTargets VerifyTargets::library()
{
    return VerifyTargets{&mfa::predict, &mfa::update};
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* VerifyReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

void VerifyReport::print(std::ostream& os) const
{
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof line, "[%s] %-28s worst=%-12.3g tol=%-8.0e instances=%zu  %s\n",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.worst_error, c.tolerance, c.instances,
                      c.description.c_str());
        os << line;
    }
    os << (passed() ? "all checks passed\n" : "verification FAILED\n");
}

CheckResult check_maxent_marginals(std::size_t hi, std::size_t cases, std::uint64_t seed)
{
    CheckResult r{"maxent.marginals", "marginals of the product distribution reproduce P", 0.0, 1e-12};
    for (std::size_t n = 1; n <= hi; ++n) {
        Rng rng = stream(seed, kMarginals, n);
        for (std::size_t c = 0; c < cases; ++c) {
            const NodeBelief P = oracle::random_node_belief(n, rng);
            const JointBelief pi = product_distribution(P);
            r.worst_error = std::max(r.worst_error, std::abs(pi.total() - 1.0));
            r.worst_error = std::max(r.worst_error, max_abs_diff(bkf::marginals(pi).probs, P.probs));
            ++r.instances;
        }
    }
    finish(r);
    return r;
}

CheckResult check_maxent_n2_search()
{
    CheckResult r{"maxent.n2_entropy_search", "numerical entropy maximizer at n=2 equals the product form",
                  0.0, 1e-8};
    for (int a = 0; a <= 10; ++a) {
        for (int b = 0; b <= 10; ++b) {
            const NodeBelief P{{a / 10.0, b / 10.0}};
            const auto found = maxent_oracle_n2(P);
            const JointBelief closed = product_distribution(P);
            r.worst_error = std::max(r.worst_error, max_abs_diff(found.belief.probs(), closed.probs()));
            ++r.instances;
        }
    }
    finish(r);
    return r;
}

CheckResult check_maxent_dominance(std::size_t hi, std::size_t cases, std::uint64_t seed)
{
    CheckResult r{"maxent.entropy_dominance",
                  "no marginal-preserving perturbation exceeds the product entropy", 0.0, 1e-12};
    for (std::size_t n = 2; n <= std::min<std::size_t>(hi, 4); ++n) {
        Rng rng = stream(seed, kDominance, n);
        for (std::size_t c = 0; c < cases; ++c) {
            NodeBelief P{std::vector<double>(n)};
            for (double& v : P.probs)
                v = 0.02 + 0.96 * rng.uniform();
            const JointBelief star = product_distribution(P);
            const JointBelief other = oracle::perturb_within_marginals(star, rng);
            // the perturbation must stay inside S(P)
            const double residual = std::max(std::abs(other.total() - 1.0),
                                             max_abs_diff(oracle::marginals({other.probs().begin(),
                                                                             other.probs().end()},
                                                                            n),
                                                          P.probs));
            const double excess = entropy(other) - entropy(star);
            r.worst_error = std::max({r.worst_error, residual, excess});
            ++r.instances;
        }
    }
    finish(r);
    return r;
}

CheckResult check_product_moments(std::size_t hi, std::size_t cases, std::uint64_t seed)
{
    CheckResult r{"maxent.product_moments", "E[prod_{l in sigma} x_l] = prod_{l in sigma} P_l for every sigma",
                  0.0, 1e-12};
    for (std::size_t n = 1; n <= std::min<std::size_t>(hi, 6); ++n) {
        Rng rng = stream(seed, kMoments, n);
        for (std::size_t c = 0; c < cases; ++c) {
            const NodeBelief P = oracle::random_node_belief(n, rng);
            const JointBelief pi = product_distribution(P);
            for (std::uint64_t sigma = 0; sigma < pi.states(); ++sigma) {
                double expected = 1.0;
                for (std::size_t l = 0; l < n; ++l)
                    if ((sigma >> l) & 1U)
                        expected *= P[l];
                r.worst_error = std::max(r.worst_error, std::abs(expected_product(pi, sigma) - expected));
                ++r.instances;
            }
        }
    }
    finish(r);
    return r;
}

CheckResult check_mfa_predict(std::size_t lo, std::size_t hi, std::size_t cases, std::uint64_t seed,
                           const VerifyTargets& targets)
{
    CheckResult r{"mfa.predict_exact", "mean-field prediction = marginals of exact prediction from Pi*(P)",
                  0.0, 1e-10};
    for (std::size_t n = lo; n <= hi; ++n) {
        Rng rng = stream(seed, kPredict, n);
        for (std::size_t c = 0; c < cases; ++c) {
            const NetworkModel model = oracle::random_model(n, rng);
            const NodeBelief P = oracle::random_node_belief(n, rng);
            const ActionVector a = oracle::random_action(n, rng);
            const double alpha = rng.uniform();
            const NodeBelief fast = targets.mfa_predict(P, model, a, alpha);
            const NodeBelief exact = bkf::marginals(bkf::predict(product_distribution(P), model, a, alpha));
            r.worst_error = std::max(r.worst_error, max_abs_diff(fast.probs, exact.probs));
            ++r.instances;
        }
    }
    finish(r);
    return r;
}

CheckResult check_mfa_update(std::size_t lo, std::size_t hi, std::size_t cases, std::uint64_t seed,
                           const VerifyTargets& targets)
{
    CheckResult r{"mfa.update_exact", "mean-field Bayes update = marginals of exact update from Pi*(P')",
                  0.0, 1e-10};
    for (std::size_t n = lo; n <= hi; ++n) {
        Rng rng = stream(seed, kUpdate, n);
        std::size_t done = 0;
        for (std::size_t attempt = 0; done < cases && attempt < 20 * cases; ++attempt) {
            const NodeBelief P = oracle::random_node_belief(n, rng);
            const ObservationVector y = oracle::random_observation(n, rng);
            const ChannelParams channel = random_channel(rng);
            if (!mfa_update_defined(P, y, channel))
                continue;
            const NodeBelief exact = bkf::marginals(bkf::update(product_distribution(P), y, channel));
            try {
                const NodeBelief fast = targets.mfa_update(P, y, channel);
                r.worst_error = std::max(r.worst_error, max_abs_diff(fast.probs, exact.probs));
            } catch (const ImpossibleObservation&) {
                // the exact update is defined here, so refusing it is a mismatch
                r.worst_error = std::numeric_limits<double>::infinity();
            }
            ++r.instances;
            ++done;
        }
    }
    finish(r);
    return r;
}

CheckResult check_column_stochastic(std::size_t hi, std::size_t cases, std::uint64_t seed)
{
    CheckResult r{"bkf.column_stochastic", "every column of the implied transition operator sums to 1",
                  0.0, 1e-12};
    for (std::size_t n = 1; n <= std::min<std::size_t>(hi, 8); ++n) {
        Rng rng = stream(seed, kColumns, n);
        for (std::size_t c = 0; c < cases; ++c) {
            const NetworkModel model = oracle::random_model(n, rng);
            const ActionVector a = oracle::random_action(n, rng);
            const double alpha = rng.uniform();
            for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
                const JointBelief col = bkf::predict(JointBelief::point_mass(n, j), model, a, alpha);
                double sum = 0.0;
                for (double v : col.probs())
                    sum += v;
                r.worst_error = std::max(r.worst_error, std::abs(sum - 1.0));
                ++r.instances;
            }
        }
    }
    finish(r);
    return r;
}

CheckResult check_hmm_one_step(std::size_t hi, std::size_t cases, std::uint64_t seed)
{
    CheckResult r{"bkf.hmm_one_step", "exact filter step equals direct 4^n-pair forward recursion", 0.0,
                  1e-12};
    for (std::size_t n = 1; n <= std::min<std::size_t>(hi, 6); ++n) {
        Rng rng = stream(seed, kHmm, n);
        for (std::size_t c = 0; c < cases; ++c) {
            const NetworkModel model = oracle::random_model(n, rng);
            const ActionVector a = oracle::random_action(n, rng);
            const ObservationVector y = oracle::random_observation(n, rng);
            const ChannelParams channel = random_channel(rng);
            // arbitrary (non-product) prior
            std::vector<double> prior(std::size_t{1} << n);
            double sum = 0.0;
            for (double& v : prior) {
                v = rng.bernoulli(0.2) ? 0.0 : rng.uniform();
                sum += v;
            }
            if (sum == 0.0) {
                prior[0] = 1.0;
                sum = 1.0;
            }
            for (double& v : prior)
                v /= sum;

            const JointBelief predicted = bkf::predict(JointBelief(prior), model, a, channel.alpha);
            const auto reference = oracle::forward_predict(prior, model, a, channel.alpha);
            r.worst_error = std::max(r.worst_error, max_abs_diff(predicted.probs(), reference));

            const auto reference_post = oracle::forward_update(reference, y, channel);
            if (!reference_post.empty()) {
                const JointBelief post = bkf::update(predicted, y, channel);
                r.worst_error = std::max(r.worst_error, max_abs_diff(post.probs(), reference_post));
            }
            ++r.instances;
        }
    }
    finish(r);
    return r;
}

VerifyReport run_verification(const VerifyOptions& options, const VerifyTargets& targets)
{
    if (options.max_n < 1 || options.max_n > kMaxVerifyNodes)
        throw std::invalid_argument("max_n must lie in 1.." + std::to_string(kMaxVerifyNodes));
    const std::size_t hi = options.max_n;
    const std::size_t cases = options.cases;
    const std::uint64_t seed = options.seed;
    VerifyReport report;
    report.checks.push_back(check_maxent_marginals(hi, cases, seed));
    if (hi >= 2) {
        report.checks.push_back(check_maxent_n2_search());
        report.checks.push_back(check_maxent_dominance(hi, cases, seed));
    }
    report.checks.push_back(check_product_moments(hi, cases, seed));
    report.checks.push_back(check_mfa_predict(1, hi, cases, seed, targets));
    report.checks.push_back(check_mfa_update(1, hi, cases, seed, targets));
    report.checks.push_back(check_column_stochastic(hi, cases, seed));
    report.checks.push_back(check_hmm_one_step(hi, cases, seed));
    return report;
}

} // namespace boolfilter
