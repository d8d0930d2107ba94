#include "boolfilter/oracle.hpp"

#include <algorithm>

#include "boolfilter/maxent.hpp"

namespace boolfilter::oracle {

double transition_entry(const NetworkModel& model, const ActionVector& a, double alpha, std::uint64_t i,
                        std::uint64_t j)
{
    const std::size_t n = model.size();
    const StateVector xi = index_to_state(i, n);
    const StateVector xj = index_to_state(j, n);
    double prob = 1.0;
    for (NodeId l = 0; l < n; ++l) {
        const double e = compromise_probability(model, xj, a, alpha, l);
        prob *= e * xi[l] + (1.0 - e) * (1.0 - xi[l]);
    }
    return prob;
}

std::vector<double> transition_column(const NetworkModel& model, const ActionVector& a, double alpha,
                                      std::uint64_t j)
{
    const std::uint64_t states = std::uint64_t{1} << model.size();
    std::vector<double> col(states);
    for (std::uint64_t i = 0; i < states; ++i)
        col[i] = transition_entry(model, a, alpha, i, j);
    return col;
}

std::vector<double> forward_predict(const std::vector<double>& prior, const NetworkModel& model,
                                    const ActionVector& a, double alpha)
{
    const std::uint64_t states = prior.size();
    std::vector<double> out(states, 0.0);
    for (std::uint64_t i = 0; i < states; ++i)
        for (std::uint64_t j = 0; j < states; ++j)
            out[i] += transition_entry(model, a, alpha, i, j) * prior[j];
    return out;
}

std::vector<double> likelihood_vector(const ObservationVector& y, const ChannelParams& params)
{
    const std::size_t n = y.size();
    const double p = params.p;
    const double q = params.q;
    std::vector<double> t(std::uint64_t{1} << n);
    for (std::uint64_t i = 0; i < t.size(); ++i) {
        const StateVector x = index_to_state(i, n);
        double prob = 1.0;
        for (std::size_t l = 0; l < n; ++l)
            prob *= y[l] * (p * x[l] + (1.0 - q) * (1.0 - x[l])) +
                    (1.0 - y[l]) * (q * (1.0 - x[l]) + (1.0 - p) * x[l]);
        t[i] = prob;
    }
    return t;
}

std::vector<double> forward_update(const std::vector<double>& prior, const ObservationVector& y,
                                   const ChannelParams& params)
{
    const std::vector<double> t = likelihood_vector(y, params);
    double evidence = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i)
        evidence += t[i] * prior[i];
    if (evidence == 0.0)
        return {};
    std::vector<double> post(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        post[i] = t[i] * prior[i] / evidence;
    return post;
}

std::vector<double> marginals(const std::vector<double>& joint, std::size_t n)
{
    std::vector<double> m(n, 0.0);
    for (std::uint64_t i = 0; i < joint.size(); ++i) {
        const StateVector x = index_to_state(i, n);
        for (std::size_t l = 0; l < n; ++l)
            m[l] += x[l] * joint[i];
    }
    return m;
}

namespace {

double edgy_probability(Rng& rng)
{
    const double u = rng.uniform();
    if (u < 0.05)
        return 0.0;
    if (u < 0.10)
        return 1.0;
    if (u < 0.15)
        return 0.5;
    return rng.uniform();
}

} // namespace

NetworkModel random_model(std::size_t n, Rng& rng)
{
    const double density = rng.uniform();
    std::vector<Edge> edges;
    for (NodeId k = 0; k < n; ++k)
        for (NodeId l = 1; l < n; ++l)
            if (k != l && rng.bernoulli(density))
                edges.push_back({k, l, edgy_probability(rng)});
    return NetworkModel::build(n, std::move(edges));
}

NodeBelief random_node_belief(std::size_t n, Rng& rng)
{
    NodeBelief P{std::vector<double>(n)};
    for (double& v : P.probs)
        v = edgy_probability(rng);
    return P;
}

ActionVector random_action(std::size_t n, Rng& rng)
{
    ActionVector a(n);
    for (std::size_t l = 1; l < n; ++l)
        a[l] = rng.bernoulli(0.3) ? 1 : 0;
    return a;
}

ObservationVector random_observation(std::size_t n, Rng& rng)
{
    ObservationVector y(n);
    for (std::size_t l = 0; l < n; ++l)
        y[l] = rng.bernoulli(0.5) ? 1 : 0;
    return y;
}

JointBelief perturb_within_marginals(const JointBelief& base, Rng& rng)
{
    const auto basis = marginal_null_space_basis(base.nodes());
    std::vector<double> direction(base.states(), 0.0);
    for (const auto& v : basis) {
        const double c = 2.0 * rng.uniform() - 1.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            direction[i] += c * v[i];
    }
    double step = 1.0;
    for (int attempt = 0; attempt < 80; ++attempt, step *= 0.5) {
        bool ok = true;
        for (std::size_t i = 0; ok && i < direction.size(); ++i)
            ok = base[i] + step * direction[i] >= 0.0;
        if (!ok)
            continue;
        // any shorter step stays feasible; pick one at random
        const double t = step * (1.0 - rng.uniform());
        std::vector<double> cand(base.states());
        for (std::size_t i = 0; i < cand.size(); ++i)
            cand[i] = std::max(0.0, base[i] + t * direction[i]);
        return JointBelief(std::move(cand));
    }
    return base;
}

} // namespace boolfilter::oracle
