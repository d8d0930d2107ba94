#pragma once

#include "boolfilter/belief.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/process.hpp"

namespace boolfilter::mfa {

/// Mean-field prediction
///   P'_l = (1 + (alpha-1) a_l) (P_l + (1-P_l) [1 - prod_{k in D_l} (1 - rho_kl P_k)])
/// in O(n + |E|). Node 0 has no in-edges and is never cleaned, so
/// P_0 = 1 is a fixed point.
NodeBelief predict(const NodeBelief& P, const NetworkModel& model, const ActionVector& a, double alpha);

/// Per-node Bayes update of P' against observation y. Throws
/// ImpossibleObservation if some node's evidence term is zero.
NodeBelief update(const NodeBelief& P_prime, const ObservationVector& y, const ChannelParams& params);

/// round(P), ties to 1.
StateVector estimate(const NodeBelief& P);

/// Algorithm state for one trajectory.
class MeanFieldFilter {
public:
    MeanFieldFilter(const NetworkModel& model, ChannelParams params, NodeBelief prior);

    StateVector step(const ActionVector& a, const ObservationVector& y);

    const NodeBelief& belief() const { return belief_; }

private:
    const NetworkModel* model_;
    ChannelParams params_;
    NodeBelief belief_;
};

} // namespace boolfilter::mfa
