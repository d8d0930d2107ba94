#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "boolfilter/graph.hpp"
#include "boolfilter/rng.hpp"

namespace boolfilter {

/// Length-n 0/1 vector. The tag keeps states, actions and observations
/// from being mixed up at call sites.
template <class Tag>
struct BitVector {
    std::vector<std::uint8_t> bits;

    BitVector() = default;
    explicit BitVector(std::size_t n) : bits(n, 0) {}
    BitVector(std::initializer_list<std::uint8_t> init) : bits(init) {}
    explicit BitVector(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t l) const { return bits[l]; }
    std::uint8_t& operator[](std::size_t l) { return bits[l]; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
};

using StateVector = BitVector<struct StateTag>;             // x_t, bit 0 pinned to 1
using ActionVector = BitVector<struct ActionTag>;           // a_t, 1 = clean, bit 0 pinned to 0
using ObservationVector = BitVector<struct ObservationTag>; // y_t, 1 = alert

/// Intrusion detector and cleaning parameters.
struct ChannelParams {
    double p = 0.8;     // true-positive probability
    double q = 0.8;     // true-negative probability
    double alpha = 0.2; // probability a cleaning fails

    void validate() const;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Initial state (1, 0, ..., 0).
StateVector initial_state(std::size_t n);

/// Probability node l is compromised at the next step given state x and
/// action a: (1 + (alpha-1) a_l) (x_l + (1-x_l) [1 - prod_{k in D_l} (1 - rho_kl x_k)]).
double compromise_probability(const NetworkModel& model, const StateVector& x, const ActionVector& a,
                              double alpha, NodeId l);

/// Draws x_{t+1}. Node 0 stays compromised.
StateVector step_true_state(const NetworkModel& model, const StateVector& x, const ActionVector& a,
                            double alpha, Rng& rng);

/// Draws an IDS reading of x through the (p, q) channel.
ObservationVector observe(const StateVector& x, const ChannelParams& params, Rng& rng);

/// Cleans exactly k distinct nodes drawn uniformly from {1..n-1}.
ActionVector random_cleaning(std::size_t n, std::size_t k, Rng& rng);

} // namespace boolfilter
