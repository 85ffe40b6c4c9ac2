#pragma once

#include <vector>

namespace polarkit {

struct ArborescenceEdge {
    int from;
    int to;
    double weight;
};

struct ArborescenceResult {
    double total_weight;
    std::vector<int> parent;  // parent[v] for every node, parent[root] = -1
};

/// Maximum-weight spanning arborescence rooted at `root` (Chu-Liu/Edmonds,
/// contraction form). Every non-root node must have at least one incoming
/// edge; weights must be finite. Deterministic for a fixed edge order.
ArborescenceResult max_weight_arborescence(int num_nodes, int root,
                                           const std::vector<ArborescenceEdge>& edges);

}  // namespace polarkit
