#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarkit/channel.hpp"
#include "polarkit/construction.hpp"

namespace polarkit {

enum class EventKind { BEC_ERASURE, GENERIC_ERROR };

/// Provider of P(A_i) and P(A_i intersect A_j) over a fixed index set.
/// BEC erasure systems are exact (atom algebra); generic systems go through
/// quantized joint density evolution on the coarse grid.
class EventSystem {
public:
    static EventSystem bec_erasure(double eps, int n, const std::vector<std::uint32_t>& indices);
    static EventSystem generic_error(const ChannelModel& ch, int n,
                                     const std::vector<std::uint32_t>& indices,
                                     const QuantizationSpec& quant = default_joint_quant());

    /// Event system over externally supplied tables. `indices` must be
    /// sorted; `both[a][b]` is P(A_a and A_b) in index-position order.
    static EventSystem from_tables(EventKind kind, int n, std::vector<std::uint32_t> indices,
                                   std::vector<double> singles,
                                   std::vector<std::vector<double>> both);

    EventKind kind() const { return kind_; }
    int n() const { return n_; }
    double channel_param() const { return param_; }  // BEC erasure probability when applicable
    const std::vector<std::uint32_t>& indices() const { return indices_; }

    double single(std::uint32_t i) const;                    // P(A_i)
    double pair_both(std::uint32_t i, std::uint32_t j) const;  // P(A_i and A_j)
    double pair_neither(std::uint32_t i, std::uint32_t j) const;  // P(A_i^c and A_j^c)

private:
    EventSystem() = default;
    std::size_t pos(std::uint32_t i) const;

    EventKind kind_ = EventKind::BEC_ERASURE;
    int n_ = 0;
    double param_ = 0.0;
    std::vector<std::uint32_t> indices_;
    std::vector<double> singles_;
    std::vector<double> both_;     // row-major over positions
    std::vector<double> neither_;
};

/// A bound value plus the witness that produced it.
struct BoundReport {
    std::string kind;
    double value = 0.0;
    std::vector<std::uint32_t> subset;                              // pair_lower
    std::vector<std::pair<std::uint32_t, std::uint32_t>> tree;      // (parent, child), parent 0 = root
    std::vector<std::pair<std::uint32_t, int>> blocks;              // (first index, log2 length)

    std::string to_json() const;
};

/// Plain union bound: the metric summed over I. May exceed one; reported
/// unclamped.
BoundReport union_bound(const ReliabilityVector& r, const std::vector<std::uint32_t>& I);

/// P(A_{2^k i + 1} u ... u A_{2^k (i+1)}) evaluated through the depth-(n-k)
/// identity 1 - (1 - P_(i+1)^{(2^{n-k})})^{2^k}. `level_metrics[d]` holds the
/// per-index event probabilities of the depth-d transform.
double block_union_prob_from_levels(const std::vector<std::vector<double>>& level_metrics,
                                    int n, int k, std::uint32_t i);

/// Same, computing the depth-(n-k) probabilities from the channel: exact
/// erasure algebra for BEC erasure events, density evolution otherwise.
double block_union_prob(const ChannelModel& ch, int n, int k, std::uint32_t i, EventKind kind,
                        const QuantizationSpec& quant = default_quant());

/// Per-depth event probabilities used by the block-union ops: exact erasure
/// probabilities for BEC erasure events, density-evolution error
/// probabilities otherwise.
std::vector<std::vector<double>> event_level_probs(const ChannelModel& ch, int n, EventKind kind,
                                                   const QuantizationSpec& quant = default_quant());

/// Union bound after greedily splitting I into maximal aligned runs of
/// length 2^k (largest k first); each run is scored by the block-union
/// identity, so the result never exceeds the plain union bound.
BoundReport decomposed_union_bound(const std::vector<std::uint32_t>& I,
                                   const std::vector<std::vector<double>>& level_metrics, int n);

/// Greedy two-term Bonferroni lower bound over subsets of I: seed with the
/// largest P(A_i), add indices while the marginal gain stays positive.
/// Minimal-element reduction is applied first for BEC erasure events.
BoundReport pairwise_lower_bound(const EventSystem& es, std::vector<std::uint32_t> I);

/// Conditional-product upper bound 1 - prod P(A_i^c | A_p(i)^c) with the
/// parent map chosen by a maximum-weight spanning arborescence. Valid for
/// BEC erasure events; other event systems require allow_generic.
BoundReport tree_upper_bound(const EventSystem& es, std::vector<std::uint32_t> I,
                             bool allow_generic = false);

/// One product-inequality check P(all survive) >= prod P(survive).
struct AssociationRow {
    std::vector<std::uint32_t> indices;
    double joint_survival;
    double product_survival;
    double margin;  // joint - product
};

/// Verifies the survival product inequality on the supplied index sets via
/// the exact s-wise erasure evolution. BEC erasure systems only.
std::vector<AssociationRow> positive_association_check(
    const EventSystem& es, const std::vector<std::vector<std::uint32_t>>& index_sets);

}  // namespace polarkit
