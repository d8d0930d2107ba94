#include "boolfilter/bkf.hpp"

#include <string>

namespace boolfilter::bkf {

namespace {

void check_dims(const JointBelief& belief, std::size_t n, const char* what)
{
    if (belief.nodes() != n)
        throw DimensionError(std::string(what) + ": belief covers " + std::to_string(belief.nodes()) +
                             " nodes, expected " + std::to_string(n));
}

} // namespace

double eta(const NetworkModel& model, const StateVector& x_j, const ActionVector& a, double alpha,
           NodeId l)
{
    return compromise_probability(model, x_j, a, alpha, l);
}

JointBelief predict(const JointBelief& belief, const NetworkModel& model, const ActionVector& a,
                    double alpha)
{
    const std::size_t n = model.size();
    check_dims(belief, n, "bkf::predict");
    if (a.size() != n)
        throw DimensionError("bkf::predict: action length mismatch");
    belief.check_normalized();

    const std::size_t states = belief.states();
    std::vector<double> keep(n);
    for (NodeId l = 0; l < n; ++l)
        keep[l] = 1.0 + (alpha - 1.0) * a[l];

    std::vector<double> out(states, 0.0);
    std::vector<double> eta_j(n);
    std::vector<double> weight(states);
    std::vector<std::uint64_t> target(states);

    for (std::uint64_t j = 0; j < states; ++j) {
        const double mass = belief[j];
        if (mass == 0.0)
            continue;

        std::uint64_t fixed = 0;
        std::size_t width = 1;
        weight[0] = mass;
        target[0] = 0;
        for (NodeId l = 0; l < n; ++l) {
            double e;
            if ((j >> l) & 1U) {
                e = keep[l];
            } else {
                double survive = 1.0;
                for (const InEdge& in : model.in_edges(l))
                    if ((j >> in.source) & 1U)
                        survive *= 1.0 - in.rho;
                e = keep[l] * (1.0 - survive);
            }
            eta_j[l] = e;
            if (e == 1.0) {
                fixed |= std::uint64_t{1} << l;
            } else if (e != 0.0) {
                // double the sub-cube: bit l off (1 - e) / on (e)
                const std::uint64_t bit = std::uint64_t{1} << l;
                for (std::size_t s = 0; s < width; ++s) {
                    weight[s + width] = weight[s] * e;
                    target[s + width] = target[s] | bit;
                    weight[s] *= 1.0 - e;
                }
                width *= 2;
            }
        }
        for (std::size_t s = 0; s < width; ++s)
            out[target[s] | fixed] += weight[s];
    }
    return JointBelief(std::move(out));
}

std::vector<double> likelihood(const ObservationVector& y, const ChannelParams& params)
{
    const std::size_t n = y.size();
    if (n > kMaxJointNodes)
        throw std::invalid_argument("likelihood vector limited to " + std::to_string(kMaxJointNodes) +
                                    " nodes");
    std::vector<double> t(std::size_t{1} << n);
    t[0] = 1.0;
    std::size_t width = 1;
    for (std::size_t l = 0; l < n; ++l) {
        const double if_compromised = y[l] ? params.p : 1.0 - params.p;
        const double if_secure = y[l] ? 1.0 - params.q : params.q;
        for (std::size_t s = 0; s < width; ++s) {
            t[s + width] = t[s] * if_compromised;
            t[s] *= if_secure;
        }
        width *= 2;
    }
    return t;
}

JointBelief update(const JointBelief& belief, const ObservationVector& y, const ChannelParams& params)
{
    check_dims(belief, y.size(), "bkf::update");
    belief.check_normalized();
    const std::vector<double> t = likelihood(y, params);
    std::vector<double> post(belief.states());
    double evidence = 0.0;
    for (std::size_t i = 0; i < post.size(); ++i) {
        post[i] = t[i] * belief[i];
        evidence += post[i];
    }
    if (!(evidence > 0.0))
        throw ImpossibleObservation("observation has zero likelihood under the joint belief");
    for (double& v : post)
        v /= evidence;
    return JointBelief(std::move(post));
}

NodeBelief marginals(const JointBelief& belief)
{
    const std::size_t n = belief.nodes();
    NodeBelief P{std::vector<double>(n, 0.0)};
    for (std::uint64_t i = 0; i < belief.states(); ++i) {
        const double mass = belief[i];
        if (mass == 0.0)
            continue;
        for (std::size_t l = 0; l < n; ++l)
            if ((i >> l) & 1U)
                P[l] += mass;
    }
    return P;
}

StateVector estimate(const JointBelief& belief)
{
    return round_belief(marginals(belief).probs);
}

BooleanKalmanFilter::BooleanKalmanFilter(const NetworkModel& model, ChannelParams params,
                                         JointBelief prior)
    : model_(&model), params_(params), belief_(std::move(prior))
{
    check_dims(belief_, model.size(), "BooleanKalmanFilter");
}

StateVector BooleanKalmanFilter::step(const ActionVector& a, const ObservationVector& y)
{
    belief_ = update(predict(belief_, *model_, a, params_.alpha), y, params_);
    return estimate(belief_);
}

} // namespace boolfilter::bkf
