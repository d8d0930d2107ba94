#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "boolfilter/belief.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/process.hpp"

namespace boolfilter {

/// Executable checks that the mean-field steps coincide with the exact
/// filter on maximum-entropy priors, plus the supporting identities.
struct VerifyOptions {
    std::size_t max_n = 6;
    std::size_t cases = 50;
    std::uint64_t seed = 1;
};

/// Implementations under test. Defaults to the library's own; tests swap
/// in deliberately broken versions to confirm the suite notices.
struct VerifyTargets {
    std::function<NodeBelief(const NodeBelief&, const NetworkModel&, const ActionVector&, double)>
        mfa_predict;
    std::function<NodeBelief(const NodeBelief&, const ObservationVector&, const ChannelParams&)> mfa_update;

    static VerifyTargets library();
};

struct CheckResult {
    std::string name;
    std::string description;
    double worst_error = 0.0;
    double tolerance = 0.0;
    std::size_t instances = 0;
    bool passed = true;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
    void print(std::ostream& os) const;
};

inline constexpr std::size_t kMaxVerifyNodes = 10;

VerifyReport run_verification(const VerifyOptions& options,
                              const VerifyTargets& targets = VerifyTargets::library());

// Individual suites. Each covers node counts lo..hi with `cases` random
// instances per node count, seeded from `seed`.
CheckResult check_maxent_marginals(std::size_t hi, std::size_t cases, std::uint64_t seed);
CheckResult check_maxent_n2_search();
CheckResult check_maxent_dominance(std::size_t hi, std::size_t cases, std::uint64_t seed);
CheckResult check_product_moments(std::size_t hi, std::size_t cases, std::uint64_t seed);
CheckResult check_mfa_predict(std::size_t lo, std::size_t hi, std::size_t cases, std::uint64_t seed,
                           const VerifyTargets& targets = VerifyTargets::library());
CheckResult check_mfa_update(std::size_t lo, std::size_t hi, std::size_t cases, std::uint64_t seed,
                           const VerifyTargets& targets = VerifyTargets::library());
CheckResult check_column_stochastic(std::size_t hi, std::size_t cases, std::uint64_t seed);
CheckResult check_hmm_one_step(std::size_t hi, std::size_t cases, std::uint64_t seed);

} // namespace boolfilter
