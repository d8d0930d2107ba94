#include "boolfilter/belief.hpp"

#include <cmath>
#include <string>

namespace boolfilter {

std::uint64_t state_to_index(const StateVector& x)
{
    if (x.size() > 63)
        throw std::out_of_range("state too long to index");
    std::uint64_t i = 0;
    for (std::size_t l = 0; l < x.size(); ++l)
        if (x[l])
            i |= std::uint64_t{1} << l;
    return i;
}

StateVector index_to_state(std::uint64_t i, std::size_t n)
{
    if (n > 63 || i >> n != 0)
        throw std::out_of_range("state index " + std::to_string(i) + " out of range for n=" +
                                std::to_string(n));
    StateVector x(n);
    for (std::size_t l = 0; l < n; ++l)
        x[l] = (i >> l) & 1U;
    return x;
}

JointBelief::JointBelief(std::vector<double> probs) : probs_(std::move(probs))
{
    const std::size_t size = probs_.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw std::invalid_argument("joint belief length must be a power of two");
    while ((std::size_t{1} << n_) < size)
        ++n_;
    if (n_ > kMaxJointNodes)
        throw std::invalid_argument("joint belief supports at most " +
                                    std::to_string(kMaxJointNodes) + " nodes");
}

JointBelief JointBelief::point_mass(std::size_t n, std::uint64_t index)
{
    if (n > kMaxJointNodes)
        throw std::invalid_argument("joint belief supports at most " +
                                    std::to_string(kMaxJointNodes) + " nodes");
    std::vector<double> p(std::size_t{1} << n, 0.0);
    p.at(index) = 1.0;
    return JointBelief(std::move(p));
}

JointBelief JointBelief::uniform(std::size_t n)
{
    if (n > kMaxJointNodes)
        throw std::invalid_argument("joint belief supports at most " +
                                    std::to_string(kMaxJointNodes) + " nodes");
    const std::size_t size = std::size_t{1} << n;
    return JointBelief(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

double JointBelief::total() const
{
    double sum = 0.0;
    for (double v : probs_)
        sum += v;
    return sum;
}

void JointBelief::check_normalized(double tol) const
{
    for (double v : probs_)
        if (!(v >= 0.0))
            throw std::invalid_argument("joint belief has a negative or NaN entry");
    if (std::abs(total() - 1.0) > tol)
        throw std::invalid_argument("joint belief is not normalized (sum=" + std::to_string(total()) +
                                    ")");
}

NodeBelief initial_node_belief(std::size_t n)
{
    NodeBelief P{std::vector<double>(n, 0.5)};
    if (n > 0)
        P[0] = 1.0;
    return P;
}

StateVector round_belief(std::span<const double> marginals)
{
    StateVector x(marginals.size());
    for (std::size_t l = 0; l < marginals.size(); ++l)
        x[l] = marginals[l] >= 0.5 ? 1 : 0;
    return x;
}

} // namespace boolfilter
