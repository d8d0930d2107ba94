#include "boolfilter/process.hpp"

#include <numeric>
#include <string>

namespace boolfilter {

namespace {

bool is_probability(double v) { return v >= 0.0 && v <= 1.0; }

void check_state(const NetworkModel& model, const StateVector& x, const ActionVector& a)
{
    if (x.size() != model.size() || a.size() != model.size())
        throw DimensionError("state/action length does not match node count " +
                             std::to_string(model.size()));
}

} // namespace

void ChannelParams::validate() const
{
    if (!is_probability(p))
        throw std::invalid_argument("p must lie in [0,1]");
    if (!is_probability(q))
        throw std::invalid_argument("q must lie in [0,1]");
    if (!is_probability(alpha))
        throw std::invalid_argument("alpha must lie in [0,1]");
}

StateVector initial_state(std::size_t n)
{
    StateVector x(n);
    if (n > 0)
        x[0] = 1;
    return x;
}

double compromise_probability(const NetworkModel& model, const StateVector& x, const ActionVector& a,
                              double alpha, NodeId l)
{
    double survive = 1.0; // probability no in-neighbor attack succeeds
    for (const InEdge& e : model.in_edges(l))
        survive *= 1.0 - e.rho * x[e.source];
    const double keep = 1.0 + (alpha - 1.0) * a[l];
    return keep * (x[l] + (1.0 - x[l]) * (1.0 - survive));
}

StateVector step_true_state(const NetworkModel& model, const StateVector& x, const ActionVector& a,
                            double alpha, Rng& rng)
{
    check_state(model, x, a);
    StateVector next(model.size());
    next[0] = 1;
    for (NodeId l = 1; l < model.size(); ++l)
        next[l] = rng.bernoulli(compromise_probability(model, x, a, alpha, l)) ? 1 : 0;
    return next;
}

ObservationVector observe(const StateVector& x, const ChannelParams& params, Rng& rng)
{
    ObservationVector y(x.size());
    for (std::size_t l = 0; l < x.size(); ++l) {
        if (x[l])
            y[l] = rng.bernoulli(params.p) ? 1 : 0;
        else
            y[l] = rng.bernoulli(params.q) ? 0 : 1;
    }
    return y;
}

ActionVector random_cleaning(std::size_t n, std::size_t k, Rng& rng)
{
    if (n == 0 || k > n - 1)
        throw std::invalid_argument("cannot clean " + std::to_string(k) + " of " +
                                    std::to_string(n == 0 ? 0 : n - 1) + " cleanable nodes");
    // partial Fisher-Yates over the cleanable nodes 1..n-1
    std::vector<NodeId> pool(n - 1);
    std::iota(pool.begin(), pool.end(), NodeId{1});
    ActionVector a(n);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
        a[pool[i]] = 1;
    }
    return a;
}

} // namespace boolfilter
