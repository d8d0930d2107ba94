#include "boolfilter/maxent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace boolfilter {

JointBelief product_distribution(const NodeBelief& P)
{
    const std::size_t n = P.size();
    if (n > kMaxJointNodes)
        throw std::invalid_argument("product distribution limited to " +
                                    std::to_string(kMaxJointNodes) + " nodes");
    for (double v : P.probs)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("node belief entries must lie in [0,1]");
    std::vector<double> pi(std::size_t{1} << n);
    pi[0] = 1.0;
    std::size_t width = 1;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t s = 0; s < width; ++s) {
            pi[s + width] = pi[s] * P[l];
            pi[s] *= 1.0 - P[l];
        }
        width *= 2;
    }
    return JointBelief(std::move(pi));
}

double entropy(const JointBelief& belief)
{
    double h = 0.0;
    for (double v : belief.probs())
        if (v > 0.0)
            h -= v * std::log(v);
    return h;
}

namespace {

struct TwoNodeFamily {
    double p1, p2;

    // state order (0,0), (1,0), (0,1), (1,1)
    std::vector<double> at(double pi11) const
    {
        return {1.0 - p1 - p2 + pi11, p1 - pi11, p2 - pi11, pi11};
    }

    double entropy(double pi11) const
    {
        double h = 0.0;
        for (double v : at(pi11))
            if (v > 0.0)
                h -= v * std::log(v);
        return h;
    }

    // dH/dpi11 = ln(pi10 pi01 / (pi11 pi00)), decreasing in pi11
    double slope(double pi11) const
    {
        const auto v = at(pi11);
        return std::log(v[1]) + std::log(v[2]) - std::log(v[3]) - std::log(v[0]);
    }
};

} // namespace

MaxEntN2 maxent_oracle_n2(const NodeBelief& P, std::size_t grid, double tol)
{
    if (P.size() != 2)
        throw std::invalid_argument("maxent_oracle_n2 needs exactly two nodes");
    const TwoNodeFamily fam{P[0], P[1]};
    MaxEntN2 r;
    r.lower = std::max(0.0, fam.p1 + fam.p2 - 1.0);
    r.upper = std::min(fam.p1, fam.p2);
    if (r.upper < r.lower && r.lower - r.upper < 1e-12)
        r.lower = r.upper; // rounding in P1 + P2 - 1 at a boundary
    if (r.upper < r.lower)
        throw std::invalid_argument("no joint distribution has these marginals");

    if (r.upper - r.lower <= tol || grid < 2) {
        r.pi11 = r.lower;
    } else {
        // coarse grid to bracket the maximizer
        std::size_t best = 0;
        double best_h = -std::numeric_limits<double>::infinity();
        const double step = (r.upper - r.lower) / static_cast<double>(grid);
        for (std::size_t k = 0; k <= grid; ++k) {
            const double h = fam.entropy(r.lower + step * static_cast<double>(k));
            if (h > best_h) {
                best_h = h;
                best = k;
            }
        }
        double lo = r.lower + step * static_cast<double>(best > 0 ? best - 1 : 0);
        double hi = std::min(r.upper, r.lower + step * static_cast<double>(best + 1));
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            if (fam.slope(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        r.pi11 = 0.5 * (lo + hi);
    }
    auto probs = fam.at(r.pi11);
    for (double& v : probs)
        v = std::max(v, 0.0);
    r.belief = JointBelief(std::move(probs));
    return r;
}

double expected_product(const JointBelief& belief, std::uint64_t sigma)
{
    if (sigma >= belief.states())
        throw std::out_of_range("node subset refers to nodes outside the belief");
    double sum = 0.0;
    for (std::uint64_t i = 0; i < belief.states(); ++i)
        if ((i & sigma) == sigma)
            sum += belief[i];
    return sum;
}

std::vector<std::vector<double>> marginal_null_space_basis(std::size_t n)
{
    if (n > 12)
        throw std::invalid_argument("null-space basis is only built for small n");
    const std::size_t states = std::size_t{1} << n;
    std::vector<std::vector<double>> basis;
    for (std::uint64_t sigma = 0; sigma < states; ++sigma) {
        if (std::popcount(sigma) < 2)
            continue;
        std::vector<double> v(states);
        for (std::uint64_t i = 0; i < states; ++i)
            // (2x-1) over sigma: sign flips once per secure node in sigma
            v[i] = (std::popcount(sigma & ~i) % 2 == 0) ? 1.0 : -1.0;
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace boolfilter
