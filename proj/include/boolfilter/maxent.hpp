#pragma once

#include <cstdint>
#include <vector>

#include "boolfilter/belief.hpp"

namespace boolfilter {

/// Maximum-entropy joint distribution with marginals P: the product
/// measure Pi_i = prod_l (P_l x^i_l + (1 - x^i_l)(1 - P_l)).
JointBelief product_distribution(const NodeBelief& P);

/// Shannon entropy in nats, 0 ln 0 = 0.
double entropy(const JointBelief& belief);

/// Result of the two-node numerical maximum-entropy search.
struct MaxEntN2 {
    double pi11 = 0.0; // mass on state (1,1), the free parameter
    double lower = 0.0;
    double upper = 0.0;
    JointBelief belief;
};

/// Searches the one-parameter family of two-node distributions with
/// marginals P for the entropy maximizer: a grid over the feasible interval
/// [max(0, P1+P2-1), min(P1, P2)] brackets the optimum, then bisection on
/// the sign of dH/dpi11 refines it to `tol`. Makes no use of the product form.
MaxEntN2 maxent_oracle_n2(const NodeBelief& P, std::size_t grid = 1000, double tol = 1e-12);

/// E[prod_{l in sigma} x_l] under `belief`; sigma is a bit mask over nodes.
double expected_product(const JointBelief& belief, std::uint64_t sigma);

/// Basis of the null space of the marginal constraints {sum Pi = 1, X Pi = P}:
/// the parity vectors v_sigma(i) = prod_{l in sigma} (2 x^i_l - 1) for every
/// |sigma| >= 2. There are 2^n - n - 1 of them and they are mutually orthogonal.
std::vector<std::vector<double>> marginal_null_space_basis(std::size_t n);

} // namespace boolfilter
