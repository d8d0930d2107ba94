#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "boolfilter/process.hpp"

namespace boolfilter {

/// The observation has zero likelihood under the current belief.
class ImpossibleObservation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest network the exact filter accepts; the joint belief alone is
/// 2^n doubles.
inline constexpr std::size_t kMaxJointNodes = 20;

/// State x <-> index i, with bit l of i holding x_l (node 0 least
/// significant). The index is 0-based: the all-secure state is 0.
std::uint64_t state_to_index(const StateVector& x);
StateVector index_to_state(std::uint64_t i, std::size_t n);

/// Probability distribution over all 2^n joint states.
class JointBelief {
public:
    JointBelief() = default;
    /// Takes ownership of `probs`; its size must be 2^n for some n <= kMaxJointNodes.
    explicit JointBelief(std::vector<double> probs);

    static JointBelief point_mass(std::size_t n, std::uint64_t index);
    static JointBelief uniform(std::size_t n);

    std::size_t nodes() const { return n_; }
    std::size_t states() const { return probs_.size(); }
    double operator[](std::uint64_t i) const { return probs_[i]; }
    std::span<const double> probs() const { return probs_; }

    double total() const;
    /// Throws std::invalid_argument unless entries are >= 0 and sum to 1 within `tol`.
    void check_normalized(double tol = 1e-9) const;

private:
    std::size_t n_ = 0;
    std::vector<double> probs_;
};

/// Per-node compromise probabilities.
struct NodeBelief {
    std::vector<double> probs;

    std::size_t size() const { return probs.size(); }
    double operator[](std::size_t l) const { return probs[l]; }
    double& operator[](std::size_t l) { return probs[l]; }
};

/// Prior used by the experiments: node 0 certain, all others 0.5.
NodeBelief initial_node_belief(std::size_t n);

/// Element-wise rounding with ties (exactly 0.5) going to 1.
StateVector round_belief(std::span<const double> marginals);

} // namespace boolfilter
