#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarkit/density.hpp"

namespace polarkit {

enum class MetricKind { ERROR_PROB, ERASURE_PROB, BHATTACHARYYA };

std::string metric_name(MetricKind kind);
MetricKind metric_from_name(const std::string& name);

/// Per-subchannel reliability metric, 1-based index i stored at values[i-1].
struct ReliabilityVector {
    int n = 0;
    MetricKind kind = MetricKind::ERROR_PROB;
    std::vector<double> values;

    double at(std::uint32_t i) const { return values[i - 1]; }
    std::size_t size() const { return values.size(); }
};

/// Output of a full density-evolution pass: error and Bhattacharyya metrics
/// for every leaf, per-level error probabilities for block-union queries,
/// and the exact number of convolution invocations (2N - 2).
struct DensityEvolutionResult {
    int n = 0;
    ReliabilityVector error_prob;
    ReliabilityVector bhattacharyya;
    std::vector<std::vector<double>> level_error_prob;  // [depth][index-1], depth 0..n
    long conv_count = 0;
};

/// Level-order density evolution: level d holds the 2^d densities of depth-d
/// subchannels; each next-level density is chk_conv or var_conv of one
/// current density with itself. Peak memory is one level of densities.
DensityEvolutionResult density_evolution_tree(const LlrDensity& base, int n);

/// The K indices of smallest metric via linear-time selection, ties broken
/// toward the larger index. Returned sorted ascending, 1-based.
std::vector<std::uint32_t> select_info_set(const ReliabilityVector& r, int K);

/// Partial order of Definition: i precedes j iff the bit set of i-1 is a
/// subset of the bit set of j-1.
inline bool precedes(std::uint32_t i, std::uint32_t j, int /*n*/ = 0) {
    return ((i - 1) & ~(j - 1)) == 0;
}

/// Elements of I with no strict predecessor inside I; the erasure-event
/// union over I equals the union over this set.
std::vector<std::uint32_t> minimal_elements(const std::vector<std::uint32_t>& I, int n);

/// A constructed code: channel descriptor, information set and the metric
/// snapshot it was selected from. Serialized as JSON for the CLI.
struct CodeSpec {
    int n = 0;
    std::string channel;
    MetricKind metric = MetricKind::ERROR_PROB;
    std::vector<std::uint32_t> info_set;  // sorted ascending, 1-based
    std::vector<double> values;           // metric per index, length 2^n

    std::uint32_t block_length() const { return 1u << n; }
    std::string to_json() const;
    static CodeSpec from_json(const std::string& text);
    void save(const std::string& path) const;
    static CodeSpec load(const std::string& path);
};

}  // namespace polarkit
