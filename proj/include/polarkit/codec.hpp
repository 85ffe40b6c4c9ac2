#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polarkit/channel.hpp"
#include "polarkit/construction.hpp"
#include "polarkit/rng.hpp"

namespace polarkit {

/// Polar transform x = (enc(u_odd xor u_even) || enc(u_even)), identity at
/// length 1. Length must be a power of two.
std::vector<std::uint8_t> polar_encode(const std::vector<std::uint8_t>& u);

struct DecodeResult {
    std::vector<std::uint8_t> u_hat;
    bool erasure = false;   // some information bit had LLR exactly 0
    long combine_ops = 0;   // chk/var combines, exactly N*log2(N)
};

/// Successive-cancellation decoder with memoized divide-and-conquer LLR
/// evaluation. Frozen bits decide 0; ties on information bits set the
/// erasure flag and resolve by a fair coin from `rng`. Instances hold their
/// own workspace and share nothing.
class ScDecoder {
public:
    ScDecoder(int n, const std::vector<std::uint32_t>& info_set);

    int n() const { return n_; }
    std::uint32_t block_length() const { return static_cast<std::uint32_t>(N_); }

    DecodeResult decode(const std::vector<double>& llr, RngStream& rng);

private:
    double get_llr(std::size_t v, std::size_t t);
    void push_bit(std::size_t v, std::size_t t, std::uint8_t bit);

    int n_;
    std::size_t N_;
    std::vector<std::uint8_t> is_info_;
    std::vector<double> cache_a_, cache_b_;
    std::vector<std::uint8_t> pend_;
    const double* chan_ = nullptr;
    long combines_ = 0;
};

/// Genie-aided LLRs of all subchannels (all prior bits forced correct under
/// the all-zero message). Used for per-bit Monte Carlo statistics.
std::vector<double> genie_llrs(int n, const std::vector<double>& llr);

enum class FailureKind { ERROR, ERASURE };

struct SimResult {
    long trials = 0;
    long failures = 0;
    double estimate = 0.0;
    double ci95 = 0.0;  // 1.96 * sqrt(est*(1-est)/trials)
    std::uint64_t seed = 0;
    FailureKind kind = FailureKind::ERROR;

    std::string to_json() const;
};

/// Monte Carlo block failure estimate under all-zero transmission. Trials
/// are sharded with per-shard derived RNG streams, so the result is
/// bit-identical for any worker count. `threads` 0 means auto (capped by
/// the POLARKIT_THREADS environment variable).
SimResult simulate_block(const CodeSpec& code, const ChannelModel& ch, long trials,
                         std::uint64_t seed, FailureKind kind, int threads = 0);

struct GenieStats {
    std::vector<double> error_rate;    // per index: L<0 or (L==0 and coin)
    std::vector<double> erasure_rate;  // per index: L==0
    long trials = 0;
};

/// Sharded genie-aided per-bit Monte Carlo over all N subchannels.
GenieStats genie_monte_carlo(const ChannelModel& ch, int n, long trials, std::uint64_t seed,
                             int threads = 0);

/// Worker count honoring the POLARKIT_THREADS cap; `requested` 0 = auto.
int effective_threads(int requested = 0);

}  // namespace polarkit
