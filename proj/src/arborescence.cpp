#include "polarkit/arborescence.hpp"

#include <cmath>
#include <stdexcept>

namespace polarkit {

namespace {

struct WorkEdge {
    int from;
    int to;
    double weight;
    int orig;  // index into the caller's edge list at the level above
};

// Returns indices (into `es`) of the chosen arborescence edges.
std::vector<int> solve(int V, int root, const std::vector<WorkEdge>& es) {
    std::vector<int> best(static_cast<std::size_t>(V), -1);
    for (int k = 0; k < static_cast<int>(es.size()); ++k) {
        const WorkEdge& e = es[static_cast<std::size_t>(k)];
        if (e.to == root || e.from == e.to) continue;
        if (best[static_cast<std::size_t>(e.to)] < 0 ||
            e.weight > es[static_cast<std::size_t>(best[static_cast<std::size_t>(e.to)])].weight)
            best[static_cast<std::size_t>(e.to)] = k;
    }
    for (int v = 0; v < V; ++v)
        if (v != root && best[static_cast<std::size_t>(v)] < 0)
            throw std::invalid_argument("arborescence: node without incoming edge");

    // find cycles in the functional graph v -> from(best[v])
    std::vector<int> color(static_cast<std::size_t>(V), 0);  // 0 new, 1 active, 2 done
    std::vector<int> comp(static_cast<std::size_t>(V), -1);
    int num_comp = 0;
    bool found_cycle = false;
    color[static_cast<std::size_t>(root)] = 2;
    for (int s = 0; s < V; ++s) {
        if (color[static_cast<std::size_t>(s)] != 0) continue;
        int v = s;
        while (color[static_cast<std::size_t>(v)] == 0) {
            color[static_cast<std::size_t>(v)] = 1;
            v = es[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].from;
        }
        if (color[static_cast<std::size_t>(v)] == 1) {  // closed a new cycle at v
            found_cycle = true;
            int u = v;
            do {
                comp[static_cast<std::size_t>(u)] = num_comp;
                u = es[static_cast<std::size_t>(best[static_cast<std::size_t>(u)])].from;
            } while (u != v);
            ++num_comp;
        }
        int u = s;  // unwind the walked path
        while (color[static_cast<std::size_t>(u)] == 1) {
            color[static_cast<std::size_t>(u)] = 2;
            u = es[static_cast<std::size_t>(best[static_cast<std::size_t>(u)])].from;
        }
    }

    if (!found_cycle) {
        std::vector<int> out;
        for (int v = 0; v < V; ++v)
            if (v != root) out.push_back(best[static_cast<std::size_t>(v)]);
        return out;
    }

    std::vector<bool> in_cycle(static_cast<std::size_t>(V), false);
    for (int v = 0; v < V; ++v)
        if (comp[static_cast<std::size_t>(v)] >= 0) in_cycle[static_cast<std::size_t>(v)] = true;
    for (int v = 0; v < V; ++v)
        if (comp[static_cast<std::size_t>(v)] < 0) comp[static_cast<std::size_t>(v)] = num_comp++;

    // contract: edges into a cycle are reweighted by the cycle edge they evict
    std::vector<WorkEdge> sub;
    for (int k = 0; k < static_cast<int>(es.size()); ++k) {
        const WorkEdge& e = es[static_cast<std::size_t>(k)];
        const int cu = comp[static_cast<std::size_t>(e.from)];
        const int cv = comp[static_cast<std::size_t>(e.to)];
        if (cu == cv) continue;
        double w = e.weight;
        if (in_cycle[static_cast<std::size_t>(e.to)])
            w -= es[static_cast<std::size_t>(best[static_cast<std::size_t>(e.to)])].weight;
        sub.push_back({cu, cv, w, k});
    }

    const std::vector<int> chosen_sub = solve(num_comp, comp[static_cast<std::size_t>(root)], sub);

    std::vector<int> result;
    std::vector<bool> entered(static_cast<std::size_t>(V), false);
    for (int k : chosen_sub) {
        const int local = sub[static_cast<std::size_t>(k)].orig;
        result.push_back(local);
        entered[static_cast<std::size_t>(es[static_cast<std::size_t>(local)].to)] = true;
    }
    // keep every cycle edge except the one evicted by the entering edge
    for (int v = 0; v < V; ++v)
        if (in_cycle[static_cast<std::size_t>(v)] && !entered[static_cast<std::size_t>(v)])
            result.push_back(best[static_cast<std::size_t>(v)]);
    return result;
}

}  // namespace

ArborescenceResult max_weight_arborescence(int num_nodes, int root,
                                           const std::vector<ArborescenceEdge>& edges) {
    if (num_nodes < 1 || root < 0 || root >= num_nodes)
        throw std::invalid_argument("arborescence: bad node count or root");
    for (const ArborescenceEdge& e : edges)
        if (!std::isfinite(e.weight))
            throw std::invalid_argument("arborescence: weights must be finite");

    std::vector<WorkEdge> es;
    es.reserve(edges.size());
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
        const ArborescenceEdge& e = edges[static_cast<std::size_t>(k)];
        if (e.from < 0 || e.from >= num_nodes || e.to < 0 || e.to >= num_nodes)
            throw std::invalid_argument("arborescence: edge endpoint out of range");
        es.push_back({e.from, e.to, e.weight, k});
    }

    const std::vector<int> chosen = solve(num_nodes, root, es);
    ArborescenceResult res;
    res.total_weight = 0.0;
    res.parent.assign(static_cast<std::size_t>(num_nodes), -1);
    for (int k : chosen) {
        const ArborescenceEdge& e = edges[static_cast<std::size_t>(es[static_cast<std::size_t>(k)].orig)];
        res.total_weight += e.weight;
        res.parent[static_cast<std::size_t>(e.to)] = e.from;
    }
    return res;
}

}  // namespace polarkit
