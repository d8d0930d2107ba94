#include "boolfilter/mfa.hpp"

#include <string>

namespace boolfilter::mfa {

NodeBelief predict(const NodeBelief& P, const NetworkModel& model, const ActionVector& a, double alpha)
{
    const std::size_t n = model.size();
    if (P.size() != n || a.size() != n)
        throw DimensionError("mfa::predict: belief/action length does not match node count " +
                             std::to_string(n));
    NodeBelief next{std::vector<double>(n)};
    for (NodeId l = 0; l < n; ++l) {
        double survive = 1.0;
        for (const InEdge& e : model.in_edges(l))
            survive *= 1.0 - e.rho * P[e.source];
        const double keep = 1.0 + (alpha - 1.0) * a[l];
        next[l] = keep * (P[l] + (1.0 - P[l]) * (1.0 - survive));
    }
    return next;
}

NodeBelief update(const NodeBelief& P_prime, const ObservationVector& y, const ChannelParams& params)
{
    const std::size_t n = P_prime.size();
    if (y.size() != n)
        throw DimensionError("mfa::update: observation length mismatch");
    const double p = params.p;
    const double q = params.q;
    NodeBelief post{std::vector<double>(n)};
    for (std::size_t l = 0; l < n; ++l) {
        const double prior = P_prime[l];
        const double hit = y[l] ? p * prior : (1.0 - p) * prior;
        const double evidence =
            y[l] ? p * prior + (1.0 - q) * (1.0 - prior) : (1.0 - p) * prior + q * (1.0 - prior);
        // With q = 1 the evidence for an alert is p P'_l, so it vanishes only
        // if P'_l = 0. Starting from an interior prior with alpha > 0, P'_l
        // stays positive: cleaning keeps a factor alpha, and a y_l = 0 update
        // maps P' > 0 to (1-p) P' / ((1-p) P' + (1-P')) > 0 for p < 1.
        if (!(evidence > 0.0))
            throw ImpossibleObservation("observation of node " + std::to_string(l + 1) +
                                        " has zero likelihood under the mean-field belief");
        post[l] = hit / evidence;
    }
    return post;
}

StateVector estimate(const NodeBelief& P)
{
    return round_belief(P.probs);
}

MeanFieldFilter::MeanFieldFilter(const NetworkModel& model, ChannelParams params, NodeBelief prior)
    : model_(&model), params_(params), belief_(std::move(prior))
{
    if (belief_.size() != model.size())
        throw DimensionError("MeanFieldFilter: prior length does not match node count");
}

StateVector MeanFieldFilter::step(const ActionVector& a, const ObservationVector& y)
{
    belief_ = update(predict(belief_, *model_, a, params_.alpha), y, params_);
    return estimate(belief_);
}

} // namespace boolfilter::mfa
