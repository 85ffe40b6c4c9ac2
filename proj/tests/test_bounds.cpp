#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "polarkit/bec_exact.hpp"
#include "polarkit/bounds.hpp"
#include "polarkit/rng.hpp"

using namespace polarkit;

namespace {

ReliabilityVector erasure_vector(double eps, int n) {
    ReliabilityVector r;
    r.n = n;
    r.kind = MetricKind::ERASURE_PROB;
    for (std::uint32_t i = 1; i <= (1u << n); ++i) r.values.push_back(evolve_erasure(eps, n, i));
    return r;
}

std::vector<std::uint32_t> random_subset(RngStream& rng, int n, double keep) {
    std::vector<std::uint32_t> I;
    for (std::uint32_t i = 1; i <= (1u << n); ++i)
        if (rng.uniform01() < keep) I.push_back(i);
    return I;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("union bound") {
    const ReliabilityVector r = erasure_vector(0.5, 2);
    CHECK(union_bound(r, {3, 4}).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(union_bound(r, {}).value == 0.0);
    CHECK(union_bound(r, {2}).value == doctest::Approx(0.5625).epsilon(1e-14));

    // Bhattacharyya vectors contribute Z/2
    ReliabilityVector z;
    z.n = 1;
    z.kind = MetricKind::BHATTACHARYYA;
    z.values = {0.4, 0.2};
    CHECK(union_bound(z, {1, 2}).value == doctest::Approx(0.3));
}

TEST_CASE("block union probability identities") {
    const ChannelModel ch = ChannelModel::bec(0.5);
    SUBCASE("k = 0 reduces to a single event") {
        for (std::uint32_t i = 0; i < 4; ++i)
            CHECK(block_union_prob(ch, 2, 0, i, EventKind::BEC_ERASURE) ==
                  doctest::Approx(evolve_erasure(0.5, 2, i + 1)).epsilon(1e-14));
    }
    SUBCASE("one level of pairing") {
        CHECK(block_union_prob(ch, 1, 1, 0, EventKind::BEC_ERASURE) ==
              doctest::Approx(0.75).epsilon(1e-14));  // = e(1) at n=1
    }
    SUBCASE("block {3,4} at n=2 equals the minimal element") {
        CHECK(block_union_prob(ch, 2, 1, 1, EventKind::BEC_ERASURE) ==
              doctest::Approx(0.4375).epsilon(1e-14));
    }
    SUBCASE("identity against the minimal element at n=6, all (k,i)") {
        const auto levels = event_level_probs(ch, 6, EventKind::BEC_ERASURE);
        for (int k = 0; k <= 6; ++k) {
            for (std::uint32_t i = 0; i < (1u << (6 - k)); ++i) {
                const double lhs = block_union_prob_from_levels(levels, 6, k, i);
                const double rhs = evolve_erasure(0.5, 6, (i << k) + 1);
                CHECK(std::abs(lhs - rhs) < 1e-12);
            }
        }
    }
    SUBCASE("range checks") {
        CHECK_THROWS_AS(block_union_prob(ch, 2, 3, 0, EventKind::BEC_ERASURE),
                        std::invalid_argument);
        CHECK_THROWS_AS(block_union_prob(ch, 2, 1, 2, EventKind::BEC_ERASURE),
                        std::invalid_argument);
    }
}

TEST_CASE("decomposed union bound") {
    const ChannelModel ch = ChannelModel::bec(0.5);
    const auto levels = event_level_probs(ch, 3, EventKind::BEC_ERASURE);

    SUBCASE("the {4,6,7,8} example splits into {4},{6},{7,8}") {
        const BoundReport rep = decomposed_union_bound({4, 6, 7, 8}, levels, 3);
        REQUIRE(rep.blocks.size() == 3);
        CHECK(rep.blocks[0] == std::pair<std::uint32_t, int>{4, 0});
        CHECK(rep.blocks[1] == std::pair<std::uint32_t, int>{6, 0});
        CHECK(rep.blocks[2] == std::pair<std::uint32_t, int>{7, 1});
        const double expected = evolve_erasure(0.5, 3, 4) + evolve_erasure(0.5, 3, 6) +
                                block_union_prob_from_levels(levels, 3, 1, 3);
        CHECK(rep.value == doctest::Approx(expected).epsilon(1e-14));

        const ReliabilityVector r = erasure_vector(0.5, 3);
        CHECK(rep.value < union_bound(r, {4, 6, 7, 8}).value);
    }
    SUBCASE("a full aligned block uses one term") {
        const BoundReport rep = decomposed_union_bound({1, 2, 3, 4, 5, 6, 7, 8}, levels, 3);
        REQUIRE(rep.blocks.size() == 1);
        CHECK(rep.blocks[0] == std::pair<std::uint32_t, int>{1, 3});
        CHECK(rep.value == doctest::Approx(1.0 - std::pow(0.5, 8)).epsilon(1e-12));
    }
    SUBCASE("isolated indices reproduce the union bound exactly") {
        const ReliabilityVector r = erasure_vector(0.5, 3);
        const BoundReport rep = decomposed_union_bound({2, 5, 8}, levels, 3);
        CHECK(rep.value == doctest::Approx(union_bound(r, {2, 5, 8}).value).epsilon(1e-14));
        CHECK(rep.blocks.size() == 3);
    }
    SUBCASE("never exceeds the union bound on random sets") {
        RngStream rng(23);
        const ReliabilityVector r = erasure_vector(0.5, 3);
        for (int t = 0; t < 100; ++t) {
            const auto I = random_subset(rng, 3, 0.5);
            if (I.empty()) continue;
            const BoundReport rep = decomposed_union_bound(I, levels, 3);
            CHECK(rep.value <= union_bound(r, I).value + 1e-14);
        }
    }
}

TEST_CASE("pairwise lower bound") {
    SUBCASE("greedy stops when the gain vanishes: {3,4} keeps only {3}") {
        const EventSystem es = EventSystem::bec_erasure(0.5, 2, {3, 4});
        const BoundReport rep = pairwise_lower_bound(es, {3, 4});
        CHECK(rep.value == doctest::Approx(0.4375).epsilon(1e-14));
        CHECK(rep.subset == std::vector<std::uint32_t>{3});
    }
    SUBCASE("singleton is exact") {
        const EventSystem es = EventSystem::bec_erasure(0.3, 3, {5});
        const BoundReport rep = pairwise_lower_bound(es, {5});
        CHECK(rep.value == doctest::Approx(evolve_erasure(0.3, 3, 5)).epsilon(1e-14));
        CHECK(rep.subset == std::vector<std::uint32_t>{5});
    }
    SUBCASE("disjoint events are Bonferroni tight") {
        const EventSystem es = EventSystem::from_tables(
            EventKind::GENERIC_ERROR, 2, {1, 2, 3}, {0.3, 0.2, 0.1},
            {{0.3, 0.0, 0.0}, {0.0, 0.2, 0.0}, {0.0, 0.0, 0.1}});
        const BoundReport rep = pairwise_lower_bound(es, {1, 2, 3});
        CHECK(rep.value == doctest::Approx(0.6).epsilon(1e-14));
        CHECK(rep.subset == std::vector<std::uint32_t>{1, 2, 3});
    }
    SUBCASE("lower bound never exceeds the exact union (oracle, n <= 4)") {
        RngStream rng(31);
        for (double eps : {0.2, 0.5, 0.8}) {
            for (int n : {2, 3, 4}) {
                for (int t = 0; t < 10; ++t) {
                    auto I = random_subset(rng, n, 0.4);
                    if (I.empty()) continue;
                    const EventSystem es = EventSystem::bec_erasure(eps, n, I);
                    const double lower = pairwise_lower_bound(es, I).value;
                    const double exact = brute_force_erasure_union(eps, n, I);
                    CHECK(lower <= exact + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("tree upper bound") {
    SUBCASE("singleton is the event probability") {
        const EventSystem es = EventSystem::bec_erasure(0.4, 3, {6});
        const BoundReport rep = tree_upper_bound(es, {6});
        CHECK(rep.value == doctest::Approx(evolve_erasure(0.4, 3, 6)).epsilon(1e-12));
        REQUIRE(rep.tree.size() == 1);
        CHECK(rep.tree[0].first == 0);
        CHECK(rep.tree[0].second == 6);
    }
    SUBCASE("an incomparable pair is exact by the chain rule") {
        const EventSystem es = EventSystem::bec_erasure(0.5, 2, {2, 3});
        const BoundReport rep = tree_upper_bound(es, {2, 3});
        const double exact = brute_force_erasure_union(0.5, 2, {2, 3});
        CHECK(rep.value == doctest::Approx(exact).epsilon(1e-12));
        CHECK(rep.tree.size() == 2);
    }
    SUBCASE("nested pair reduces to the minimal element") {
        const EventSystem es = EventSystem::bec_erasure(0.5, 2, {3, 4});
        const BoundReport rep = tree_upper_bound(es, {3, 4});
        CHECK(rep.value == doctest::Approx(0.4375).epsilon(1e-12));
    }
    SUBCASE("independent events give the product form") {
        const EventSystem es = EventSystem::from_tables(
            EventKind::GENERIC_ERROR, 2, {1, 2, 3}, {0.3, 0.2, 0.1},
            {{0.3, 0.06, 0.03}, {0.06, 0.2, 0.02}, {0.03, 0.02, 0.1}});
        const BoundReport rep = tree_upper_bound(es, {1, 2, 3}, true);
        CHECK(rep.value == doctest::Approx(1.0 - 0.7 * 0.8 * 0.9).epsilon(1e-12));
    }
    SUBCASE("certain event forces bound one") {
        const EventSystem es = EventSystem::bec_erasure(1.0, 2, {1, 4});
        CHECK(tree_upper_bound(es, {1, 4}).value == 1.0);
    }
    SUBCASE("generic systems require the override") {
        const EventSystem es = EventSystem::from_tables(EventKind::GENERIC_ERROR, 1, {1},
                                                        {0.1}, {{0.1}});
        CHECK_THROWS_AS(tree_upper_bound(es, {1}), std::invalid_argument);
        CHECK(tree_upper_bound(es, {1}, true).value == doctest::Approx(0.1));
    }
    SUBCASE("invariant under relabeling of I") {
        const std::vector<std::uint32_t> I = {3, 5, 6, 9, 12};
        const EventSystem es = EventSystem::bec_erasure(0.45, 4, I);
        std::vector<std::uint32_t> shuffled = {12, 3, 9, 6, 5};
        CHECK(tree_upper_bound(es, shuffled).value ==
              doctest::Approx(tree_upper_bound(es, I).value).epsilon(1e-15));
    }
}

TEST_CASE("sandwich against the exhaustive union, n <= 4") {
    RngStream rng(7);
    for (double eps : {0.1, 0.5, 0.9}) {
        for (int n : {2, 3, 4}) {
            for (int t = 0; t < 8; ++t) {
                auto I = random_subset(rng, n, 0.35);
                if (I.empty()) continue;
                const double exact = brute_force_erasure_union(eps, n, I);
                const EventSystem es = EventSystem::bec_erasure(eps, n, I);
                const double lower = pairwise_lower_bound(es, I).value;
                const double upper = tree_upper_bound(es, I).value;
                const auto levels =
                    event_level_probs(ChannelModel::bec(eps), n, EventKind::BEC_ERASURE);
                const double dec = decomposed_union_bound(I, levels, n).value;
                ReliabilityVector r = erasure_vector(eps, n);
                const double uni = union_bound(r, I).value;
                CHECK(lower <= exact + 1e-12);
                CHECK(exact <= upper + 1e-12);
                CHECK(upper <= 1.0 + 1e-15);
                CHECK(exact <= dec + 1e-12);
                CHECK(dec <= uni + 1e-12);
            }
        }
    }
}

TEST_CASE("union over minimal elements equals union over I in the oracle") {
    RngStream rng(13);
    for (double eps : {0.3, 0.7}) {
        for (int n : {3, 4}) {
            for (int t = 0; t < 10; ++t) {
                auto I = random_subset(rng, n, 0.4);
                if (I.empty()) continue;
                const auto M = minimal_elements(I, n);
                CHECK(std::abs(brute_force_erasure_union(eps, n, I) -
                               brute_force_erasure_union(eps, n, M)) < 1e-12);
            }
        }
    }
}

TEST_CASE("tree bound optimality against exhaustive parent maps, |I| <= 5") {
    // replicate the log-weight construction and compare against brute force
    RngStream rng(47);
    for (int t = 0; t < 20; ++t) {
        auto I = random_subset(rng, 4, 0.25);
        if (I.size() < 2 || I.size() > 5) continue;
        I = minimal_elements(I, 4);
        if (I.size() < 2) continue;
        const EventSystem es = EventSystem::bec_erasure(0.5, 4, I);
        const BoundReport rep = tree_upper_bound(es, I);

        // exhaustive: every parent assignment over root+I that forms a tree
        const int V = static_cast<int>(I.size());
        std::vector<int> parent(static_cast<std::size_t>(V), -1);
        double best = -1.0;
        const auto eval = [&]() -> double {
            double surv = 1.0;
            for (int v = 0; v < V; ++v) {
                const double qa = 1.0 - es.single(I[static_cast<std::size_t>(v)]);
                if (parent[static_cast<std::size_t>(v)] < 0) {
                    surv *= qa;
                } else {
                    const std::uint32_t p = I[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
                    surv *= es.pair_neither(I[static_cast<std::size_t>(v)], p) /
                            (1.0 - es.single(p));
                }
            }
            return 1.0 - surv;
        };
        const auto acyclic = [&]() {
            for (int v = 0; v < V; ++v) {
                int u = v, steps = 0;
                while (u >= 0 && ++steps <= V + 1) u = parent[static_cast<std::size_t>(u)];
                if (u >= 0) return false;
            }
            return true;
        };
        const auto rec = [&](auto&& self, int v) -> void {
            if (v == V) {
                if (acyclic()) best = (best < 0) ? eval() : std::min(best, eval());
                return;
            }
            for (int p = -1; p < V; ++p) {
                if (p == v) continue;
                parent[static_cast<std::size_t>(v)] = p;
                self(self, v + 1);
            }
        };
        rec(rec, 0);
        REQUIRE(best >= 0.0);
        CHECK(rep.value == doctest::Approx(best).epsilon(1e-10));
    }
}

TEST_CASE("positive association margins") {
    SUBCASE("all pairs at n <= 4 have nonnegative margin") {
        for (double eps : {0.5}) {
            for (int n : {3, 4}) {
                const std::uint32_t N = 1u << n;
                std::vector<std::uint32_t> all(N);
                for (std::uint32_t i = 0; i < N; ++i) all[i] = i + 1;
                const EventSystem es = EventSystem::bec_erasure(eps, n, all);
                std::vector<std::vector<std::uint32_t>> sets;
                for (std::uint32_t i = 1; i <= N; ++i)
                    for (std::uint32_t j = i + 1; j <= N; ++j) sets.push_back({i, j});
                for (const AssociationRow& row : positive_association_check(es, sets))
                    CHECK(row.margin >= -1e-12);
            }
        }
    }
    SUBCASE("degenerate channels give equality") {
        for (double eps : {0.0, 1.0}) {
            const EventSystem es = EventSystem::bec_erasure(eps, 3, {2, 5, 7});
            for (const AssociationRow& row :
                 positive_association_check(es, {{2, 5}, {2, 5, 7}}))
                CHECK(std::abs(row.margin) < 1e-12);
        }
    }
    SUBCASE("nested pair margin is the subset-law value") {
        // i precedes j: survivors satisfy P(both survive) = P(A_i'^c)
        const EventSystem es = EventSystem::bec_erasure(0.5, 2, {3, 4});
        const auto rows = positive_association_check(es, {{3, 4}});
        REQUIRE(rows.size() == 1);
        const double qi = 1.0 - evolve_erasure(0.5, 2, 3);
        const double pj = evolve_erasure(0.5, 2, 4);
        CHECK(rows[0].joint_survival == doctest::Approx(qi).epsilon(1e-13));
        CHECK(rows[0].margin == doctest::Approx(qi * pj).epsilon(1e-12));
    }
}

TEST_CASE("generic event system on the BEC matches the coin algebra") {
    // error events resolve erasures by independent fair coins
    const EventSystem gen =
        EventSystem::generic_error(ChannelModel::bec(0.5), 2, {1, 2, 3, 4});
    for (std::uint32_t i = 1; i <= 4; ++i)
        CHECK(gen.single(i) == doctest::Approx(evolve_erasure(0.5, 2, i) / 2).epsilon(1e-12));
    for (std::uint32_t i = 1; i <= 4; ++i) {
        for (std::uint32_t j = i + 1; j <= 4; ++j) {
            const JointErasureDist p = evolve_joint(0.5, 2, i, j);
            CHECK(gen.pair_both(i, j) == doctest::Approx(p.p00 / 4).epsilon(1e-12));
        }
    }
}

}  // TEST_SUITE
