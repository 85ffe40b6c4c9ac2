#pragma once

#include <cstdint>
#include <random>

namespace polarkit {

/// Deterministic random stream. Substreams derived from (seed, stream id)
/// are independent for practical purposes and reproducible across runs,
/// so sharded Monte Carlo gives identical results for any worker count.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : eng_(mix(seed ^ 0x9e3779b97f4a7c15ULL)) {}

    static RngStream derive(std::uint64_t seed, std::uint64_t stream) {
        RngStream r(0);
        r.eng_.seed(mix(mix(seed) + 0x9e3779b97f4a7c15ULL * (stream + 1)));
        return r;
    }

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    int coin() { return static_cast<int>(eng_() >> 63); }

    /// Standard normal, Box-Muller (implementation-independent).
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

private:
    static std::uint64_t mix(std::uint64_t x) {  // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace polarkit
