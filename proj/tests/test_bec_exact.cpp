#include <doctest.h>

#include <cmath>
#include <vector>

#include "polarkit/bec_exact.hpp"
#include "polarkit/construction.hpp"
#include "polarkit/rng.hpp"

using namespace polarkit;

TEST_SUITE("bec_exact") {

TEST_CASE("evolve_erasure closed forms") {
    // frozen N=4 table at eps = 0.5, cross-checked by the exhaustive oracle
    const double expected[4] = {0.9375, 0.5625, 0.4375, 0.0625};
    for (std::uint32_t i = 1; i <= 4; ++i)
        CHECK(evolve_erasure(0.5, 2, i) == doctest::Approx(expected[i - 1]).epsilon(1e-15));

    for (double eps : {0.1, 0.3, 0.7}) {
        for (int n : {1, 3, 6}) {
            const double N = std::pow(2.0, n);
            CHECK(evolve_erasure(eps, n, 1) ==
                  doctest::Approx(1.0 - std::pow(1.0 - eps, N)).epsilon(1e-12));
            CHECK(evolve_erasure(eps, n, 1u << n) ==
                  doctest::Approx(std::pow(eps, N)).epsilon(1e-12));
        }
    }

    SUBCASE("degenerate fixed points") {
        for (std::uint32_t i = 1; i <= 8; ++i) {
            CHECK(evolve_erasure(0.0, 3, i) == 0.0);
            CHECK(evolve_erasure(1.0, 3, i) == 1.0);
        }
    }
    CHECK_THROWS_AS(evolve_erasure(0.5, 2, 5), std::out_of_range);
    CHECK_THROWS_AS(evolve_erasure(0.5, 2, 0), std::out_of_range);
    CHECK_THROWS_AS(evolve_erasure(1.5, 2, 1), std::invalid_argument);
}

TEST_CASE("evolve_erasure matches the brute-force oracle per index") {
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int n = 0; n <= 4; ++n) {
            const std::uint32_t N = 1u << n;
            std::vector<std::uint32_t> all(N);
            for (std::uint32_t i = 0; i < N; ++i) all[i] = i + 1;
            const JointErasureDistS full = brute_force_events(eps, n, all);
            for (std::uint32_t i = 1; i <= N; ++i) {
                const double p = full.marginalize({static_cast<int>(i) - 1}).prob(0);
                CHECK(evolve_erasure(eps, n, i) == doctest::Approx(p).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("evolve_joint single-level example and diagonal") {
    const JointErasureDist d = evolve_joint(0.5, 1, 1, 2);
    CHECK(d.p00 == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(d.p01 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.p10 == doctest::Approx(0.0));
    CHECK(d.p11 == doctest::Approx(0.25).epsilon(1e-15));

    // i = j stays diagonal
    for (std::uint32_t i = 1; i <= 8; ++i) {
        const JointErasureDist dd = evolve_joint(0.3, 3, i, i);
        CHECK(dd.p01 == 0.0);
        CHECK(dd.p10 == 0.0);
        CHECK(dd.p00 == doctest::Approx(evolve_erasure(0.3, 3, i)).epsilon(1e-15));
    }
}

TEST_CASE("evolve_joint nested pair (3,4) at n=2") {
    const JointErasureDist d = evolve_joint(0.5, 2, 3, 4);
    CHECK(d.p00 == doctest::Approx(0.0625).epsilon(1e-15));  // = e(4): A4' inside A3'
    CHECK(d.p10 == doctest::Approx(0.0));
}

TEST_CASE("evolve_joint marginals equal evolve_erasure") {
    RngStream rng(11);
    for (double eps : {0.1, 0.5, 0.9}) {
        for (int n : {1, 2, 3, 4, 6, 10}) {
            for (int t = 0; t < 20; ++t) {
                const std::uint32_t i = 1 + static_cast<std::uint32_t>(rng.uniform01() * (1u << n));
                const std::uint32_t j = 1 + static_cast<std::uint32_t>(rng.uniform01() * (1u << n));
                const JointErasureDist d = evolve_joint(eps, n, i, j);
                CHECK(std::abs(d.marginal_first() - evolve_erasure(eps, n, i)) < 1e-14);
                CHECK(std::abs(d.marginal_second() - evolve_erasure(eps, n, j)) < 1e-14);
                CHECK(std::abs(d.sum() - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("evolve_joint equals the oracle on every pair, n <= 4") {
    for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        for (int n = 1; n <= 4; ++n) {
            const std::uint32_t N = 1u << n;
            std::vector<std::uint32_t> all(N);
            for (std::uint32_t i = 0; i < N; ++i) all[i] = i + 1;
            const JointErasureDistS full = brute_force_events(eps, n, all);
            for (std::uint32_t i = 1; i <= N; ++i) {
                for (std::uint32_t j = i + 1; j <= N; ++j) {
                    const JointErasureDist d = evolve_joint(eps, n, i, j);
                    const JointErasureDistS b =
                        full.marginalize({static_cast<int>(i) - 1, static_cast<int>(j) - 1});
                    CHECK(std::abs(d.p00 - b.prob(0b00)) < 1e-12);
                    CHECK(std::abs(d.p01 - b.prob(0b01)) < 1e-12);
                    CHECK(std::abs(d.p10 - b.prob(0b10)) < 1e-12);
                    CHECK(std::abs(d.p11 - b.prob(0b11)) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("subset law: i precedes j forces p10 = 0") {
    for (double eps : {0.3, 0.6}) {
        const int n = 5;
        for (std::uint32_t i = 1; i <= 32; ++i) {
            for (std::uint32_t j = 1; j <= 32; ++j) {
                if (i == j || !precedes(i, j, n)) continue;
                const JointErasureDist d = evolve_joint(eps, n, i, j);
                CHECK(d.p10 == doctest::Approx(0.0).epsilon(1e-14));
                CHECK(d.p00 == doctest::Approx(evolve_erasure(eps, n, j)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("monotonicity under the partial order, n <= 10") {
    for (double eps : {0.2, 0.5, 0.8}) {
        for (int n : {8, 10}) {
            const std::uint32_t N = 1u << n;
            std::vector<double> e(N);
            for (std::uint32_t i = 1; i <= N; ++i) e[i - 1] = evolve_erasure(eps, n, i);
            long violations = 0;
            for (std::uint32_t i = 1; i <= N; ++i)
                for (std::uint32_t j = 1; j <= N; ++j)
                    if (precedes(i, j, n) && e[j - 1] > e[i - 1] + 1e-15) ++violations;
            CHECK(violations == 0);
        }
    }
}

TEST_CASE("evolve_joint_s reduces to the scalar and pairwise evolutions") {
    SUBCASE("s = 1") {
        for (double eps : {0.25, 0.75}) {
            for (std::uint32_t i = 1; i <= 16; ++i) {
                const JointErasureDistS d = evolve_joint_s(eps, 4, {i});
                CHECK(d.prob(0) == doctest::Approx(evolve_erasure(eps, 4, i)).epsilon(1e-13));
            }
        }
    }
    SUBCASE("s = 2 equals evolve_joint") {
        for (double eps : {0.1, 0.5, 0.9}) {
            for (int n = 1; n <= 4; ++n) {
                const std::uint32_t N = 1u << n;
                for (std::uint32_t i = 1; i <= N; ++i) {
                    for (std::uint32_t j = 1; j <= N; ++j) {
                        if (i == j) continue;
                        const JointErasureDistS d = evolve_joint_s(eps, n, {i, j});
                        const JointErasureDist p = evolve_joint(eps, n, i, j);
                        CHECK(std::abs(d.prob(0b00) - p.p00) < 1e-12);
                        CHECK(std::abs(d.prob(0b01) - p.p01) < 1e-12);
                        CHECK(std::abs(d.prob(0b10) - p.p10) < 1e-12);
                        CHECK(std::abs(d.prob(0b11) - p.p11) < 1e-12);
                    }
                }
            }
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(evolve_joint_s(0.5, 3, {2, 2}), std::invalid_argument);
        CHECK_THROWS_AS(evolve_joint_s(0.5, 3, {}), std::invalid_argument);
        CHECK_THROWS_AS(evolve_joint_s(0.5, 3, std::vector<std::uint32_t>(21, 1)),
                        std::invalid_argument);
    }
}

TEST_CASE("triple joint matches brute force") {
    const JointErasureDistS d = evolve_joint_s(0.5, 2, {2, 3, 4});
    const JointErasureDistS b = brute_force_events(0.5, 2, {2, 3, 4});
    for (std::uint32_t m = 0; m < 8; ++m)
        CHECK(std::abs(d.prob(m) - b.prob(m)) < 1e-12);
    CHECK(d.all_erased() == doctest::Approx(b.prob(0)).epsilon(1e-12));
}

TEST_CASE("brute force degenerate channels") {
    SUBCASE("n = 0 is the raw channel") {
        for (double eps : {0.0, 0.4, 1.0}) {
            const JointErasureDistS d = brute_force_events(eps, 0, {1});
            CHECK(d.prob(0) == doctest::Approx(eps));
        }
    }
    SUBCASE("eps 0 and 1 degenerate to a single pattern") {
        const JointErasureDistS a = brute_force_events(0.0, 3, {1, 5, 8});
        CHECK(a.all_known() == doctest::Approx(1.0));
        const JointErasureDistS b = brute_force_events(1.0, 3, {1, 5, 8});
        CHECK(b.all_erased() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(brute_force_events(0.5, 5, {1}), std::invalid_argument);
}

TEST_CASE("marginalize projects onto coordinate subsets") {
    const JointErasureDistS d = evolve_joint_s(0.4, 3, {2, 5, 7});
    const JointErasureDistS m = d.marginalize({0, 2});  // keep indices 2 and 7
    const JointErasureDist p = evolve_joint(0.4, 3, 2, 7);
    CHECK(m.prob(0b00) == doctest::Approx(p.p00).epsilon(1e-12));
    CHECK(m.prob(0b01) == doctest::Approx(p.p01).epsilon(1e-12));
    CHECK(m.prob(0b10) == doctest::Approx(p.p10).epsilon(1e-12));
    CHECK(m.prob(0b11) == doctest::Approx(p.p11).epsilon(1e-12));
}

TEST_CASE("first-error and genie union probabilities coincide") {
    for (double eps : {0.2, 0.5, 0.8}) {
        for (int n : {2, 3, 4}) {
            const std::vector<std::uint32_t> I = {2, 3, (1u << n)};
            const UnionProbPair u = brute_force_union_error(eps, n, I);
            CHECK(std::abs(u.via_first_error - u.via_genie) < 1e-12);
        }
    }
}

}  // TEST_SUITE
