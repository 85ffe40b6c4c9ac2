#include "polarkit/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "polarkit/arborescence.hpp"
#include "polarkit/bec_exact.hpp"
#include "polarkit/codec.hpp"
#include "polarkit/joint_density.hpp"

namespace polarkit {

std::size_t EventSystem::pos(std::uint32_t i) const {
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), i);
    if (it == indices_.end() || *it != i)
        throw std::out_of_range("event system: index not covered");
    return static_cast<std::size_t>(it - indices_.begin());
}

double EventSystem::single(std::uint32_t i) const { return singles_[pos(i)]; }

double EventSystem::pair_both(std::uint32_t i, std::uint32_t j) const {
    return both_[pos(i) * indices_.size() + pos(j)];
}

double EventSystem::pair_neither(std::uint32_t i, std::uint32_t j) const {
    return neither_[pos(i) * indices_.size() + pos(j)];
}

EventSystem EventSystem::bec_erasure(double eps, int n, const std::vector<std::uint32_t>& indices) {
    EventSystem es;
    es.kind_ = EventKind::BEC_ERASURE;
    es.n_ = n;
    es.param_ = eps;
    es.indices_ = indices;
    std::sort(es.indices_.begin(), es.indices_.end());
    const std::size_t m = es.indices_.size();
    es.singles_.resize(m);
    es.both_.resize(m * m);
    es.neither_.resize(m * m);
    for (std::size_t a = 0; a < m; ++a)
        es.singles_[a] = evolve_erasure(eps, n, es.indices_[a]);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            const JointErasureDist d = evolve_joint(eps, n, es.indices_[a], es.indices_[b]);
            es.both_[a * m + b] = es.both_[b * m + a] = (a == b) ? es.singles_[a] : d.p00;
            es.neither_[a * m + b] = es.neither_[b * m + a] =
                (a == b) ? 1.0 - es.singles_[a] : d.p11;
        }
    }
    return es;
}

EventSystem EventSystem::from_tables(EventKind kind, int n, std::vector<std::uint32_t> indices,
                                     std::vector<double> singles,
                                     std::vector<std::vector<double>> both) {
    EventSystem es;
    es.kind_ = kind;
    es.n_ = n;
    es.indices_ = std::move(indices);
    if (!std::is_sorted(es.indices_.begin(), es.indices_.end()))
        throw std::invalid_argument("event system: indices must be sorted");
    const std::size_t m = es.indices_.size();
    if (singles.size() != m || both.size() != m)
        throw std::invalid_argument("event system: table size mismatch");
    es.singles_ = std::move(singles);
    es.both_.resize(m * m);
    es.neither_.resize(m * m);
    for (std::size_t a = 0; a < m; ++a) {
        if (both[a].size() != m) throw std::invalid_argument("event system: table size mismatch");
        for (std::size_t b = 0; b < m; ++b) {
            es.both_[a * m + b] = both[a][b];
            es.neither_[a * m + b] = 1.0 - es.singles_[a] - es.singles_[b] + both[a][b];
        }
    }
    return es;
}

EventSystem EventSystem::generic_error(const ChannelModel& ch, int n,
                                       const std::vector<std::uint32_t>& indices,
                                       const QuantizationSpec& quant) {
    EventSystem es;
    es.kind_ = EventKind::GENERIC_ERROR;
    es.n_ = n;
    es.param_ = ch.param();
    es.indices_ = indices;
    std::sort(es.indices_.begin(), es.indices_.end());
    const std::size_t m = es.indices_.size();
    es.singles_.resize(m);
    es.both_.resize(m * m);
    es.neither_.resize(m * m);

    const LlrDensity base = llr_density(ch, quant);
    const JointLlrDensity joint_base = JointLlrDensity::diagonal(base);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a; b < m; ++b) pairs.emplace_back(a, b);

    const auto evaluate = [&](std::size_t a, std::size_t b) {
        const std::uint32_t bi = es.indices_[a] - 1, bj = es.indices_[b] - 1;
        JointLlrDensity d = joint_base;
        for (int t = n - 1; t >= 0; --t) {
            const bool vi = (bi >> t) & 1u;
            const bool vj = (bj >> t) & 1u;
            const JointConvMode mode = vi ? (vj ? JointConvMode::VV : JointConvMode::VC)
                                          : (vj ? JointConvMode::CV : JointConvMode::CC);
            d = joint_conv(d, mode);
        }
        const JointEventProbs p = joint_event_probs(d);
        if (a == b) {
            es.singles_[a] = p.ee + p.ec;
            es.both_[a * m + a] = p.ee + p.ec;
            es.neither_[a * m + a] = 1.0 - (p.ee + p.ec);
        } else {
            es.both_[a * m + b] = es.both_[b * m + a] = p.ee;
            es.neither_[a * m + b] = es.neither_[b * m + a] = p.cc;
        }
    };

    // pairs are independent and write disjoint table slots
    const int workers = std::min<std::size_t>(effective_threads(), pairs.size());
    if (workers <= 1) {
        for (const auto& [a, b] : pairs) evaluate(a, b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= pairs.size()) return;
                    evaluate(pairs[k].first, pairs[k].second);
                }
            });
        }
        for (auto& th : pool) th.join();
    }
    return es;
}

std::string BoundReport::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["value"] = value;
    nlohmann::json w;
    if (!subset.empty()) w["subset"] = subset;
    if (!tree.empty()) {
        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [p, c] : tree) edges.push_back({{"parent", p}, {"child", c}});
        w["tree"] = edges;
    }
    if (!blocks.empty()) {
        nlohmann::json bl = nlohmann::json::array();
        for (const auto& [first, k] : blocks)
            bl.push_back({{"first", first}, {"length", 1u << k}});
        w["blocks"] = bl;
    }
    j["witness"] = w;
    return j.dump();
}

BoundReport union_bound(const ReliabilityVector& r, const std::vector<std::uint32_t>& I) {
    BoundReport rep;
    rep.kind = "union";
    double s = 0.0;
    for (std::uint32_t i : I) s += r.at(i);
    // the Bhattacharyya variant bounds the error probability by Z/2
    rep.value = (r.kind == MetricKind::BHATTACHARYYA) ? 0.5 * s : s;
    return rep;
}

double block_union_prob_from_levels(const std::vector<std::vector<double>>& level_metrics,
                                    int n, int k, std::uint32_t i) {
    if (k < 0 || k > n) throw std::invalid_argument("block_union_prob: k out of range");
    if (i >= (1u << (n - k))) throw std::invalid_argument("block_union_prob: block index out of range");
    const double p = level_metrics[static_cast<std::size_t>(n - k)][i];
    // (1-p)^(2^k) by k squarings
    double c = 1.0 - p;
    for (int t = 0; t < k; ++t) c *= c;
    return 1.0 - c;
}

std::vector<std::vector<double>> event_level_probs(const ChannelModel& ch, int n, EventKind kind,
                                                   const QuantizationSpec& quant) {
    if (kind == EventKind::BEC_ERASURE) {
        if (ch.kind() != ChannelKind::BEC)
            throw std::invalid_argument("erasure events need a BEC channel");
        std::vector<std::vector<double>> levels(static_cast<std::size_t>(n) + 1);
        for (int d = 0; d <= n; ++d) {
            auto& row = levels[static_cast<std::size_t>(d)];
            row.resize(std::size_t{1} << d);
            for (std::uint32_t i = 0; i < (1u << d); ++i)
                row[i] = evolve_erasure(ch.param(), d, i + 1);
        }
        return levels;
    }
    return density_evolution_tree(llr_density(ch, quant), n).level_error_prob;
}

double block_union_prob(const ChannelModel& ch, int n, int k, std::uint32_t i, EventKind kind,
                        const QuantizationSpec& quant) {
    return block_union_prob_from_levels(event_level_probs(ch, n, kind, quant), n, k, i);
}

BoundReport decomposed_union_bound(const std::vector<std::uint32_t>& I,
                                   const std::vector<std::vector<double>>& level_metrics, int n) {
    std::vector<std::uint32_t> sorted(I);
    std::sort(sorted.begin(), sorted.end());

    BoundReport rep;
    rep.kind = "decomposed";
    std::size_t t = 0;
    while (t < sorted.size()) {
        const std::uint32_t v = sorted[t];
        int best_k = 0;
        for (int k = 1; k <= n; ++k) {
            const std::uint32_t len = 1u << k;
            if ((v - 1) % len != 0) break;
            if (t + len > sorted.size()) break;
            if (sorted[t + len - 1] != v + len - 1) break;  // run must be consecutive
            best_k = k;
        }
        rep.blocks.emplace_back(v, best_k);
        rep.value += block_union_prob_from_levels(level_metrics, n, best_k, (v - 1) >> best_k);
        t += std::size_t{1} << best_k;
    }
    return rep;
}

namespace {

std::vector<std::uint32_t> reduce_if_bec(const EventSystem& es, std::vector<std::uint32_t> I) {
    std::sort(I.begin(), I.end());
    if (es.kind() == EventKind::BEC_ERASURE) return minimal_elements(I, es.n());
    return I;
}

}  // namespace

BoundReport pairwise_lower_bound(const EventSystem& es, std::vector<std::uint32_t> I) {
    BoundReport rep;
    rep.kind = "pair_lower";
    const std::vector<std::uint32_t> cand = reduce_if_bec(es, std::move(I));
    if (cand.empty()) return rep;

    // seed with the most likely event, ties to the smaller index
    std::uint32_t seed = cand.front();
    for (std::uint32_t i : cand)
        if (es.single(i) > es.single(seed)) seed = i;

    std::vector<std::uint32_t> S{seed};
    std::vector<bool> taken(cand.size(), false);
    for (std::size_t a = 0; a < cand.size(); ++a)
        if (cand[a] == seed) taken[a] = true;

    double value = es.single(seed);
    for (;;) {
        double best_gain = 0.0;
        std::size_t best_pos = cand.size();
        for (std::size_t a = 0; a < cand.size(); ++a) {
            if (taken[a]) continue;
            double gain = es.single(cand[a]);
            for (std::uint32_t j : S) gain -= es.pair_both(cand[a], j);
            if (gain > best_gain) {
                best_gain = gain;
                best_pos = a;
            }
        }
        if (best_pos == cand.size()) break;
        taken[best_pos] = true;
        S.push_back(cand[best_pos]);
        value += best_gain;
    }

    std::sort(S.begin(), S.end());
    // restate the bound from scratch; the incremental value matches up to fp
    double v = 0.0;
    for (std::size_t a = 0; a < S.size(); ++a) {
        v += es.single(S[a]);
        for (std::size_t b = a + 1; b < S.size(); ++b) v -= es.pair_both(S[a], S[b]);
    }
    rep.value = v;
    rep.subset = std::move(S);
    return rep;
}

BoundReport tree_upper_bound(const EventSystem& es, std::vector<std::uint32_t> I,
                             bool allow_generic) {
    if (es.kind() != EventKind::BEC_ERASURE && !allow_generic)
        throw std::invalid_argument(
            "tree_upper_bound: positive association is only established for BEC erasure events; "
            "pass allow_generic to override");

    BoundReport rep;
    rep.kind = "tree_upper";
    const std::vector<std::uint32_t> nodes = reduce_if_bec(es, std::move(I));
    if (nodes.empty()) return rep;

    for (std::uint32_t i : nodes) {
        if (1.0 - es.single(i) <= 0.0) {  // certain event: the union is certain
            rep.value = 1.0;
            rep.tree.emplace_back(0u, i);
            return rep;
        }
    }

    // node 0 is the virtual root; edge weights are log conditional survival
    // probabilities, clamped away from zero so weights stay finite
    const int V = static_cast<int>(nodes.size()) + 1;
    const double tiny = 1e-300;
    std::vector<ArborescenceEdge> edges;
    edges.reserve(nodes.size() * nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const double qa = 1.0 - es.single(nodes[a]);
        edges.push_back({0, static_cast<int>(a) + 1, std::log(std::max(qa, tiny))});
        for (std::size_t b = 0; b < nodes.size(); ++b) {
            if (a == b) continue;
            const double qb = 1.0 - es.single(nodes[b]);
            const double cond = es.pair_neither(nodes[a], nodes[b]) / qb;
            edges.push_back({static_cast<int>(b) + 1, static_cast<int>(a) + 1,
                             std::log(std::max(std::min(cond, 1.0), tiny))});
        }
    }

    const ArborescenceResult arb = max_weight_arborescence(V, 0, edges);
    double log_surv = 0.0;
    for (std::size_t a = 0; a < nodes.size(); ++a) {
        const int p = arb.parent[a + 1];
        const std::uint32_t parent_index = (p == 0) ? 0u : nodes[static_cast<std::size_t>(p - 1)];
        rep.tree.emplace_back(parent_index, nodes[a]);
        if (p == 0) {
            log_surv += std::log(1.0 - es.single(nodes[a]));
        } else {
            const double qb = 1.0 - es.single(parent_index);
            log_surv += std::log(std::min(es.pair_neither(nodes[a], parent_index) / qb, 1.0));
        }
    }
    rep.value = std::min(1.0, std::max(0.0, 1.0 - std::exp(log_surv)));
    std::sort(rep.tree.begin(), rep.tree.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });
    return rep;
}

std::vector<AssociationRow> positive_association_check(
    const EventSystem& es, const std::vector<std::vector<std::uint32_t>>& index_sets) {
    if (es.kind() != EventKind::BEC_ERASURE)
        throw std::invalid_argument("positive_association_check: BEC erasure systems only");

    std::vector<AssociationRow> rows;
    rows.reserve(index_sets.size());
    for (const auto& set : index_sets) {
        AssociationRow row;
        row.indices = set;
        const JointErasureDistS d = evolve_joint_s(es.channel_param(), es.n(), set);
        row.joint_survival = d.all_known();
        row.product_survival = 1.0;
        for (std::uint32_t i : set)
            row.product_survival *= 1.0 - evolve_erasure(es.channel_param(), es.n(), i);
        row.margin = row.joint_survival - row.product_survival;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace polarkit
