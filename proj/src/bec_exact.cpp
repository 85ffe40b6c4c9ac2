#include "polarkit/bec_exact.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace polarkit {

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("bec: erasure probability must be in [0,1]");
}

void check_index(int n, std::uint32_t i) {
    if (n < 0 || n > 30) throw std::invalid_argument("bec: n out of range");
    if (i < 1 || i > (1u << n)) throw std::out_of_range("bec: subchannel index out of range");
}

}  // namespace

double evolve_erasure(double eps, int n, std::uint32_t i) {
    check_eps(eps);
    check_index(n, i);
    double e = eps;
    const std::uint32_t bits = i - 1;
    for (int t = n - 1; t >= 0; --t) {
        if ((bits >> t) & 1u)
            e = e * e;
        else
            e = 2.0 * e - e * e;
    }
    return e;
}

JointErasureDist evolve_joint(double eps, int n, std::uint32_t i, std::uint32_t j) {
    check_eps(eps);
    check_index(n, i);
    check_index(n, j);
    JointErasureDist p;
    p.p00 = eps;
    p.p11 = 1.0 - eps;
    const std::uint32_t bi = i - 1, bj = j - 1;
    for (int t = n - 1; t >= 0; --t) {
        const bool vi = (bi >> t) & 1u;  // variable-side rule for coordinate i
        const bool vj = (bj >> t) & 1u;
        JointErasureDist q;
        if (vi && vj) {
            q.p00 = p.p00 * p.p00;
            q.p01 = p.p01 * p.p01 + 2.0 * p.p00 * p.p01;
            q.p10 = p.p10 * p.p10 + 2.0 * p.p00 * p.p10;
            q.p11 = 1.0 - q.p00 - q.p01 - q.p10;
        } else if (vi && !vj) {
            q.p00 = p.p00 * p.p00 + 2.0 * p.p00 * p.p01;
            q.p01 = p.p01 * p.p01;
            q.p11 = p.p11 * p.p11 + 2.0 * p.p11 * p.p01;
            q.p10 = 1.0 - q.p00 - q.p01 - q.p11;
        } else if (!vi && vj) {
            q.p00 = p.p00 * p.p00 + 2.0 * p.p00 * p.p10;
            q.p10 = p.p10 * p.p10;
            q.p11 = p.p11 * p.p11 + 2.0 * p.p11 * p.p10;
            q.p01 = 1.0 - q.p00 - q.p10 - q.p11;
        } else {
            q.p01 = p.p01 * p.p01 + 2.0 * p.p01 * p.p11;
            q.p10 = p.p10 * p.p10 + 2.0 * p.p10 * p.p11;
            q.p11 = p.p11 * p.p11;
            q.p00 = 1.0 - q.p01 - q.p10 - q.p11;
        }
        p = q;
    }
    return p;
}

JointErasureDistS JointErasureDistS::marginalize(const std::vector<int>& coords) const {
    const int s = static_cast<int>(coords.size());
    std::vector<double> out(std::size_t{1} << s, 0.0);
    const std::uint32_t full = static_cast<std::uint32_t>(p_.size());
    for (std::uint32_t m = 0; m < full; ++m) {
        if (p_[m] == 0.0) continue;
        std::uint32_t sub = 0;
        for (int c = 0; c < s; ++c) {
            const int bit = order_ - 1 - coords[static_cast<std::size_t>(c)];
            if ((m >> bit) & 1u) sub |= 1u << (s - 1 - c);
        }
        out[sub] += p_[m];
    }
    return JointErasureDistS(s, std::move(out));
}

double JointErasureDistS::sum() const {
    double s = 0.0;
    for (double v : p_) s += v;
    return s;
}

JointErasureDistS evolve_joint_s(double eps, int n, const std::vector<std::uint32_t>& indices) {
    check_eps(eps);
    const int s = static_cast<int>(indices.size());
    if (s < 1) throw std::invalid_argument("evolve_joint_s: need at least one index");
    if (s > 20) throw std::invalid_argument("evolve_joint_s: order capped at 20");
    for (int a = 0; a < s; ++a) {
        check_index(n, indices[static_cast<std::size_t>(a)]);
        for (int b = a + 1; b < s; ++b)
            if (indices[static_cast<std::size_t>(a)] == indices[static_cast<std::size_t>(b)])
                throw std::invalid_argument("evolve_joint_s: duplicate indices");
    }

    const std::uint32_t patterns = 1u << s;
    // base: all coordinates share the channel's erasure state (diagonal)
    std::vector<double> p(patterns, 0.0);
    p[0] = eps;
    p[patterns - 1] = 1.0 - eps;

    for (int t = n - 1; t >= 0; --t) {
        // mask of coordinates taking the variable-side rule at this level
        std::uint32_t var_mask = 0;
        for (int c = 0; c < s; ++c)
            if (((indices[static_cast<std::size_t>(c)] - 1) >> t) & 1u)
                var_mask |= 1u << (s - 1 - c);
        std::vector<double> q(patterns, 0.0);
        for (std::uint32_t u = 0; u < patterns; ++u) {
            if (p[u] == 0.0) continue;
            for (std::uint32_t v = 0; v < patterns; ++v) {
                if (p[v] == 0.0) continue;
                // state 1 = known: variable output known iff either copy
                // known, check output known iff both copies known
                const std::uint32_t w = ((u | v) & var_mask) | ((u & v) & ~var_mask);
                q[w & (patterns - 1)] += p[u] * p[v];
            }
        }
        p = std::move(q);
    }
    return JointErasureDistS(s, std::move(p));
}

std::vector<bool> genie_erasure_pattern(int n, const std::vector<bool>& erased) {
    const std::size_t N = std::size_t{1} << n;
    if (erased.size() != N) throw std::invalid_argument("genie_erasure_pattern: length mismatch");
    std::vector<bool> cur(erased);
    // stages from the channel side up: within each block the halves combine
    // into interleaved subchannels, odd local index erased iff either half
    // erased (check), even local index iff both (variable)
    for (std::size_t m = 1; m < N; m *= 2) {
        std::vector<bool> next(N);
        for (std::size_t base = 0; base < N; base += 2 * m) {
            for (std::size_t i = 0; i < m; ++i) {
                const bool a = cur[base + i];
                const bool b = cur[base + m + i];
                next[base + 2 * i] = a || b;
                next[base + 2 * i + 1] = a && b;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

namespace {

void check_brute(int n) {
    if (n < 0 || n > 4) throw std::invalid_argument("brute force oracle limited to n <= 4");
}

// compensated accumulation: the enumeration sums tens of thousands of
// weights spanning many orders of magnitude, and the oracle must stay
// trustworthy at the 1e-12 comparison tolerance
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Enumerates all channel erasure patterns, handing the per-subchannel genie
// erasure flags and the pattern weight to `fn`. Buffers are reused across
// patterns; weights come from precomputed power tables.
template <typename Fn>
void for_each_pattern(double eps, int n, Fn&& fn) {
    const int N = 1 << n;
    std::vector<double> pow_e(static_cast<std::size_t>(N) + 1, 1.0);
    std::vector<double> pow_k(static_cast<std::size_t>(N) + 1, 1.0);
    for (int t = 1; t <= N; ++t) {
        pow_e[static_cast<std::size_t>(t)] = pow_e[static_cast<std::size_t>(t - 1)] * eps;
        pow_k[static_cast<std::size_t>(t)] = pow_k[static_cast<std::size_t>(t - 1)] * (1.0 - eps);
    }
    std::vector<std::uint8_t> cur(static_cast<std::size_t>(N)), next(static_cast<std::size_t>(N));
    for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
        const int k = std::popcount(mask);
        const double w = pow_e[static_cast<std::size_t>(k)] * pow_k[static_cast<std::size_t>(N - k)];
        if (w == 0.0) continue;
        for (int pos = 0; pos < N; ++pos)
            cur[static_cast<std::size_t>(pos)] = (mask >> pos) & 1u;
        for (std::size_t m = 1; m < static_cast<std::size_t>(N); m *= 2) {
            for (std::size_t base = 0; base < static_cast<std::size_t>(N); base += 2 * m) {
                for (std::size_t i = 0; i < m; ++i) {
                    const std::uint8_t a = cur[base + i];
                    const std::uint8_t b = cur[base + m + i];
                    next[base + 2 * i] = a | b;
                    next[base + 2 * i + 1] = a & b;
                }
            }
            std::swap(cur, next);
        }
        fn(cur, w);
    }
}

}  // namespace

JointErasureDistS brute_force_events(double eps, int n, const std::vector<std::uint32_t>& indices) {
    check_eps(eps);
    check_brute(n);
    const int s = static_cast<int>(indices.size());
    if (s < 1 || s > 20) throw std::invalid_argument("brute_force_events: bad order");
    for (std::uint32_t i : indices) check_index(n, i);

    std::vector<KahanSum> acc(std::size_t{1} << s);
    for_each_pattern(eps, n, [&](const std::vector<std::uint8_t>& sub, double w) {
        std::uint32_t pattern = 0;
        for (int c = 0; c < s; ++c)
            if (!sub[indices[static_cast<std::size_t>(c)] - 1])  // known
                pattern |= 1u << (s - 1 - c);
        acc[pattern].add(w);
    });
    std::vector<double> probs(acc.size());
    for (std::size_t m = 0; m < acc.size(); ++m) probs[m] = acc[m].sum;
    return JointErasureDistS(s, std::move(probs));
}

UnionProbPair brute_force_union_error(double eps, int n, const std::vector<std::uint32_t>& info_set) {
    check_eps(eps);
    check_brute(n);
    for (std::uint32_t i : info_set) check_index(n, i);

    KahanSum genie, first_error;
    for_each_pattern(eps, n, [&](const std::vector<std::uint8_t>& sub, double w) {
        // genie route: each erased information bit errs on an independent
        // fair coin, so P(some error) = 1 - 2^{-k}
        int k = 0;
        for (std::uint32_t i : info_set)
            if (sub[i - 1]) ++k;
        genie.add(w * (1.0 - std::ldexp(1.0, -k)));
        // sequential route: sum the disjoint first-error events. The first
        // error happens at the r-th erased information bit iff the earlier
        // r-1 coins were right and this one wrong.
        double p_first = 0.0;
        int rank = 0;
        for (std::uint32_t i : info_set) {
            if (sub[i - 1]) {
                ++rank;
                p_first += std::ldexp(1.0, -rank);
            }
        }
        first_error.add(w * p_first);
    });
    return UnionProbPair{first_error.sum, genie.sum};
}

double brute_force_erasure_union(double eps, int n, const std::vector<std::uint32_t>& info_set) {
    check_eps(eps);
    check_brute(n);
    for (std::uint32_t i : info_set) check_index(n, i);

    KahanSum p;
    for_each_pattern(eps, n, [&](const std::vector<std::uint8_t>& sub, double w) {
        for (std::uint32_t i : info_set) {
            if (sub[i - 1]) {
                p.add(w);
                return;
            }
        }
    });
    return p.sum;
}

}  // namespace polarkit
