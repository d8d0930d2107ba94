#pragma once

// Brute-force reference computations and random instance generators. These
// follow the textbook definitions term by term and share no code path with
// the fast filters they are used to check.

#include <cstdint>
#include <vector>

#include "boolfilter/belief.hpp"
#include "boolfilter/graph.hpp"
#include "boolfilter/process.hpp"
#include "boolfilter/rng.hpp"

namespace boolfilter::oracle {

/// (M)_{ij} = Pr(x^i | x^j, a) = prod_l (eta^j_l x^i_l + (1 - eta^j_l)(1 - x^i_l)).
double transition_entry(const NetworkModel& model, const ActionVector& a, double alpha, std::uint64_t i,
                        std::uint64_t j);

/// Column j of M, built entry by entry.
std::vector<double> transition_column(const NetworkModel& model, const ActionVector& a, double alpha,
                                      std::uint64_t j);

/// sum_j M_ij Pi_j over all 4^n (i, j) pairs.
std::vector<double> forward_predict(const std::vector<double>& prior, const NetworkModel& model,
                                    const ActionVector& a, double alpha);

/// (T)_i = prod_l Pr(y_l | x^i_l), evaluated per state.
std::vector<double> likelihood_vector(const ObservationVector& y, const ChannelParams& params);

/// (T o Pi) / (T^T Pi) from likelihood_vector; returns empty if T^T Pi = 0.
std::vector<double> forward_update(const std::vector<double>& prior, const ObservationVector& y,
                                   const ChannelParams& params);

/// sum_{i : x^i_l = 1} Pi_i by direct enumeration.
std::vector<double> marginals(const std::vector<double>& joint, std::size_t n);

/// Random directed graph: each admissible pair present with a per-graph
/// density drawn in [0,1]; rho per edge uniform, occasionally exactly 0 or 1.
NetworkModel random_model(std::size_t n, Rng& rng);

/// Uniform [0,1] entries, with a share of exact 0, 0.5 and 1 values.
NodeBelief random_node_belief(std::size_t n, Rng& rng);
ActionVector random_action(std::size_t n, Rng& rng);
ObservationVector random_observation(std::size_t n, Rng& rng);

/// Moves `base` along a random combination of marginal-preserving
/// directions, halving the step until every entry is nonnegative. The
/// result has the same marginals as `base`.
JointBelief perturb_within_marginals(const JointBelief& base, Rng& rng);

} // namespace boolfilter::oracle
