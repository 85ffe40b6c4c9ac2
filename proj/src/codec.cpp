#include "polarkit/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace polarkit {

namespace {

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

double chk_op(double a, double b) {
    if (std::isinf(a)) return a > 0 ? b : -b;
    if (std::isinf(b)) return b > 0 ? a : -a;
    if (a == 0.0 || b == 0.0) return 0.0;
    return boxplus(a, b);
}

double var_op(double a, double b) {
    // opposite infinities only arise after a wrong coin decision; treat the
    // contradiction as an erasure
    if (std::isinf(a) && std::isinf(b) && (a > 0) != (b > 0)) return 0.0;
    return a + b;
}

}  // namespace

std::vector<std::uint8_t> polar_encode(const std::vector<std::uint8_t>& u) {
    const std::size_t N = u.size();
    if (!is_power_of_two(N))
        throw std::invalid_argument("polar_encode: length must be a power of 2");
    std::vector<std::uint8_t> cur(u);
    std::vector<std::uint8_t> next(N);
    for (std::size_t m = N; m >= 2; m /= 2) {
        for (std::size_t base = 0; base < N; base += m) {
            for (std::size_t i = 0; i < m / 2; ++i) {
                next[base + i] = cur[base + 2 * i] ^ cur[base + 2 * i + 1];
                next[base + m / 2 + i] = cur[base + 2 * i + 1];
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

ScDecoder::ScDecoder(int n, const std::vector<std::uint32_t>& info_set)
    : n_(n), N_(std::size_t{1} << n) {
    if (n < 0 || n > 24) throw std::invalid_argument("sc_decode: n out of range");
    is_info_.assign(N_, 0);
    for (std::uint32_t i : info_set) {
        if (i < 1 || i > N_) throw std::invalid_argument("sc_decode: info index out of range");
        is_info_[i - 1] = 1;
    }
    cache_a_.assign(2 * N_, 0.0);
    cache_b_.assign(2 * N_, 0.0);
    pend_.assign(2 * N_, 0);
}

double ScDecoder::get_llr(std::size_t v, std::size_t t) {
    if (v >= N_) return chan_[v - N_];
    if (t & 1) {
        const std::size_t s = (t + 1) / 2;
        const double a = get_llr(2 * v, s);
        const double b = get_llr(2 * v + 1, s);
        cache_a_[v] = a;
        cache_b_[v] = b;
        ++combines_;
        return chk_op(a, b);
    }
    ++combines_;
    return var_op(cache_b_[v], pend_[v] ? -cache_a_[v] : cache_a_[v]);
}

void ScDecoder::push_bit(std::size_t v, std::size_t t, std::uint8_t bit) {
    if (v >= N_) return;
    if (t & 1) {
        pend_[v] = bit;
    } else {
        push_bit(2 * v, t / 2, pend_[v] ^ bit);
        push_bit(2 * v + 1, t / 2, bit);
    }
}

DecodeResult ScDecoder::decode(const std::vector<double>& llr, RngStream& rng) {
    if (llr.size() != N_) throw std::invalid_argument("sc_decode: LLR length mismatch");
    chan_ = llr.data();
    combines_ = 0;

    DecodeResult res;
    res.u_hat.assign(N_, 0);
    for (std::size_t i = 1; i <= N_; ++i) {
        const double L = get_llr(1, i);
        std::uint8_t u = 0;
        if (is_info_[i - 1]) {
            if (L < 0.0) {
                u = 1;
            } else if (L == 0.0) {
                res.erasure = true;
                u = static_cast<std::uint8_t>(rng.coin());
            }
        }
        res.u_hat[i - 1] = u;
        push_bit(1, i, u);
    }
    res.combine_ops = combines_;
    chan_ = nullptr;
    return res;
}

std::vector<double> genie_llrs(int n, const std::vector<double>& llr) {
    const std::size_t N = std::size_t{1} << n;
    if (llr.size() != N) throw std::invalid_argument("genie_llrs: length mismatch");
    std::vector<double> cur(llr);
    std::vector<double> next(N);
    for (std::size_t m = 1; m < N; m *= 2) {
        for (std::size_t base = 0; base < N; base += 2 * m) {
            for (std::size_t i = 0; i < m; ++i) {
                const double a = cur[base + i];
                const double b = cur[base + m + i];
                next[base + 2 * i] = chk_op(a, b);
                next[base + 2 * i + 1] = var_op(a, b);
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

std::string SimResult::to_json() const {
    nlohmann::json j;
    j["trials"] = trials;
    j["failures"] = failures;
    j["estimate"] = estimate;
    j["ci95"] = ci95;
    j["seed"] = seed;
    j["failure_kind"] = (kind == FailureKind::ERROR) ? "error" : "erasure";
    return j.dump();
}

int effective_threads(int requested) {
    int t = requested;
    if (t <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        t = hw ? static_cast<int>(hw) : 1;
    }
    if (const char* env = std::getenv("POLARKIT_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0 && cap < t) t = cap;
    }
    return std::max(1, t);
}

namespace {

constexpr long kShardTrials = 4096;

template <typename ShardFn>
void run_sharded(long trials, int threads, ShardFn&& fn) {
    const long shards = (trials + kShardTrials - 1) / kShardTrials;
    const int workers = std::min<long>(std::max(1, threads), shards);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (long s = w; s < shards; s += workers) {
                const long first = s * kShardTrials;
                const long count = std::min(kShardTrials, trials - first);
                fn(s, count);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SimResult simulate_block(const CodeSpec& code, const ChannelModel& ch, long trials,
                         std::uint64_t seed, FailureKind kind, int threads) {
    if (trials < 1) throw std::invalid_argument("simulate_block: trials must be positive");
    const std::size_t N = code.block_length();

    const long shards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<long> shard_failures(static_cast<std::size_t>(shards), 0);

    run_sharded(trials, effective_threads(threads), [&](long shard, long count) {
        RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(shard));
        ScDecoder dec(code.n, code.info_set);
        std::vector<double> llr(N);
        long fails = 0;
        for (long t = 0; t < count; ++t) {
            for (std::size_t p = 0; p < N; ++p) llr[p] = sample_llr(ch, rng);
            const DecodeResult r = dec.decode(llr, rng);
            if (kind == FailureKind::ERASURE) {
                fails += r.erasure ? 1 : 0;
            } else {
                bool err = false;
                for (std::uint32_t i : code.info_set)
                    if (r.u_hat[i - 1] != 0) { err = true; break; }
                fails += err ? 1 : 0;
            }
        }
        shard_failures[static_cast<std::size_t>(shard)] = fails;
    });

    SimResult res;
    res.trials = trials;
    for (long f : shard_failures) res.failures += f;
    res.estimate = static_cast<double>(res.failures) / static_cast<double>(trials);
    res.ci95 = 1.96 * std::sqrt(res.estimate * (1.0 - res.estimate) / static_cast<double>(trials));
    res.seed = seed;
    res.kind = kind;
    return res;
}

GenieStats genie_monte_carlo(const ChannelModel& ch, int n, long trials, std::uint64_t seed,
                             int threads) {
    if (trials < 1) throw std::invalid_argument("genie_monte_carlo: trials must be positive");
    const std::size_t N = std::size_t{1} << n;

    const long shards = (trials + kShardTrials - 1) / kShardTrials;
    std::vector<std::vector<long>> err_counts(static_cast<std::size_t>(shards));
    std::vector<std::vector<long>> era_counts(static_cast<std::size_t>(shards));

    run_sharded(trials, effective_threads(threads), [&](long shard, long count) {
        RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(shard));
        std::vector<long> errs(N, 0), eras(N, 0);
        std::vector<double> llr(N);
        for (long t = 0; t < count; ++t) {
            for (std::size_t p = 0; p < N; ++p) llr[p] = sample_llr(ch, rng);
            const std::vector<double> L = genie_llrs(n, llr);
            for (std::size_t i = 0; i < N; ++i) {
                if (L[i] == 0.0) {
                    ++eras[i];
                    if (rng.coin()) ++errs[i];
                } else if (L[i] < 0.0) {
                    ++errs[i];
                }
            }
        }
        err_counts[static_cast<std::size_t>(shard)] = std::move(errs);
        era_counts[static_cast<std::size_t>(shard)] = std::move(eras);
    });

    GenieStats out;
    out.trials = trials;
    out.error_rate.assign(N, 0.0);
    out.erasure_rate.assign(N, 0.0);
    for (long s = 0; s < shards; ++s) {
        for (std::size_t i = 0; i < N; ++i) {
            out.error_rate[i] += static_cast<double>(err_counts[static_cast<std::size_t>(s)][i]);
            out.erasure_rate[i] += static_cast<double>(era_counts[static_cast<std::size_t>(s)][i]);
        }
    }
    for (std::size_t i = 0; i < N; ++i) {
        out.error_rate[i] /= static_cast<double>(trials);
        out.erasure_rate[i] /= static_cast<double>(trials);
    }
    return out;
}

}  // namespace polarkit
