#pragma once

#include <cstdint>
#include <vector>

namespace polarkit {

/// Exact erasure probability of subchannel i (1-based) of a depth-n polar
/// transform over BEC(eps). Bits of i-1 are consumed MSB first: a 0 bit
/// applies the check map e -> 2e - e^2, a 1 bit the variable map e -> e^2.
/// This is the probability of the erasure event A_i'; the coin-resolved
/// error probability P(A_i) is half of it.
double evolve_erasure(double eps, int n, std::uint32_t i);

/// Joint distribution of the erasure states of two subchannels.
/// State 0 = erased, 1 = known; p_ab = P(state of i = a, state of j = b).
struct JointErasureDist {
    double p00 = 0.0;
    double p01 = 0.0;
    double p10 = 0.0;
    double p11 = 0.0;

    double marginal_first() const { return p00 + p01; }    // P(i erased)
    double marginal_second() const { return p00 + p10; }   // P(j erased)
    double sum() const { return p00 + p01 + p10 + p11; }
};

/// Pairwise joint erasure evolution: one branch map per level, selected by
/// the bit pair (b_t(i-1), b_t(j-1)) MSB first, starting from the diagonal
/// base p(0,0)=eps, p(1,1)=1-eps.
JointErasureDist evolve_joint(double eps, int n, std::uint32_t i, std::uint32_t j);

/// Distribution over the 2^s erasure patterns of s subchannels. Pattern m
/// encodes coordinate c's state in bit (s-1-c), state 1 = known, so for
/// s = 2 the pattern literal 0b01 means "first erased, second known".
class JointErasureDistS {
public:
    JointErasureDistS(int order, std::vector<double> probs)
        : order_(order), p_(std::move(probs)) {}

    int order() const { return order_; }
    double prob(std::uint32_t pattern) const { return p_[pattern]; }
    const std::vector<double>& probs() const { return p_; }

    double all_erased() const { return p_.front(); }
    double all_known() const { return p_.back(); }

    /// Marginal pattern distribution over a subset of coordinate positions
    /// (ascending order preserved).
    JointErasureDistS marginalize(const std::vector<int>& coords) const;

    double sum() const;

private:
    int order_;
    std::vector<double> p_;  // size 2^order
};

/// s-wise generalization of evolve_joint: push-forward of two independent
/// copies of the pattern distribution under the per-coordinate BEC rules
/// (check: erased iff either copy erased; variable: erased iff both).
/// Indices must be distinct; order is capped at 20 to bound storage.
JointErasureDistS evolve_joint_s(double eps, int n, const std::vector<std::uint32_t>& indices);

/// Exhaustive oracle (n <= 4): enumerates all 2^N channel erasure patterns,
/// runs exact 0/inf genie-aided SC message passing on each, and accumulates
/// the joint erasure-pattern distribution of the requested subchannels.
JointErasureDistS brute_force_events(double eps, int n, const std::vector<std::uint32_t>& indices);

/// Per-pattern genie erasure indicators: flags[i-1] is true iff the SC LLR
/// of subchannel i is zero when positions in `erased` are erased.
std::vector<bool> genie_erasure_pattern(int n, const std::vector<bool>& erased);

/// Block error probability over an information set computed two independent
/// ways from the exhaustive enumeration: summing disjoint first-error events
/// of the sequential decoder, and complementing the genie per-bit events.
struct UnionProbPair {
    double via_first_error;
    double via_genie;
};
UnionProbPair brute_force_union_error(double eps, int n, const std::vector<std::uint32_t>& info_set);

/// P(any subchannel in I erased), by exhaustive enumeration (n <= 4).
double brute_force_erasure_union(double eps, int n, const std::vector<std::uint32_t>& info_set);

}  // namespace polarkit
