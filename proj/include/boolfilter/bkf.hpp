#pragma once

#include "boolfilter/belief.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/process.hpp"

namespace boolfilter::bkf {

/// eta^j_l: probability node l is compromised after one step from joint
/// state x_j under action a.
double eta(const NetworkModel& model, const StateVector& x_j, const ActionVector& a, double alpha,
           NodeId l);

/// Pi_{t|t-1} = M(a) Pi_{t-1|t-1}, applied without materializing M.
///
/// Column j of M is the product measure prod_l Bernoulli(eta^j_l), so each
/// source state scatters its mass over the sub-cube spanned by the nodes
/// whose eta lies strictly inside (0,1); nodes with eta in {0,1} are fixed
/// bits. Work is O(2^n * (n + |E|) + sum_j 2^{free_j}), at most O(4^n);
/// memory is O(2^n). Output entries are accumulated in increasing source
/// order, so the result is bitwise reproducible.
JointBelief predict(const JointBelief& belief, const NetworkModel& model, const ActionVector& a,
                    double alpha);

/// T_i = Pr(y | x = x^i) for every joint state, conditionally independent
/// across nodes.
std::vector<double> likelihood(const ObservationVector& y, const ChannelParams& params);

/// Pi_{t|t} = (T o Pi) / (T^T Pi). Throws ImpossibleObservation when
/// T^T Pi == 0.
JointBelief update(const JointBelief& belief, const ObservationVector& y, const ChannelParams& params);

/// X Pi: per-node probability of being compromised.
NodeBelief marginals(const JointBelief& belief);

/// round(X Pi), ties to 1.
StateVector estimate(const JointBelief& belief);

/// Algorithm state for one trajectory: belief plus the model it filters.
class BooleanKalmanFilter {
public:
    BooleanKalmanFilter(const NetworkModel& model, ChannelParams params, JointBelief prior);

    /// One predict/update/estimate cycle; `a` is the action applied during
    /// the transition that produced `y`.
    StateVector step(const ActionVector& a, const ObservationVector& y);

    const JointBelief& belief() const { return belief_; }

private:
    const NetworkModel* model_;
    ChannelParams params_;
    JointBelief belief_;
};

} // namespace boolfilter::bkf
