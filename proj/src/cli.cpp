#include "polarkit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarkit/bec_exact.hpp"
#include "polarkit/bounds.hpp"
#include "polarkit/channel.hpp"
#include "polarkit/codec.hpp"
#include "polarkit/construction.hpp"

namespace polarkit {

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

int compute_info_count(int n, double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw CLI::ValidationError("--rate", "rate must be in (0,1]");
    const long N = 1L << n;
    const long K = std::lround(static_cast<double>(N) * rate);
    if (K < 1 || K > N)
        throw CLI::ValidationError("--rate", "rounded info count falls outside 1..N");
    return static_cast<int>(K);
}

CodeSpec construct_code(const std::string& channel_desc, int n, double rate,
                        const std::string& metric) {
    const ChannelModel ch = ChannelModel::parse(channel_desc);
    const int K = compute_info_count(n, rate);
    const DensityEvolutionResult de = density_evolution_tree(llr_density(ch, default_quant()), n);
    const MetricKind kind = metric_from_name(metric);
    const ReliabilityVector& r =
        (kind == MetricKind::BHATTACHARYYA) ? de.bhattacharyya : de.error_prob;

    CodeSpec code;
    code.n = n;
    code.channel = channel_desc;
    code.metric = kind;
    code.info_set = select_info_set(r, K);
    code.values = r.values;
    return code;
}

struct BoundsOutput {
    nlohmann::json json;
};

BoundsOutput compute_bounds(const CodeSpec& code, const ChannelModel& ch,
                            const std::vector<std::string>& which, bool unsafe) {
    const int n = code.n;
    const std::vector<std::uint32_t>& I = code.info_set;
    const bool is_bec = ch.kind() == ChannelKind::BEC;
    const EventKind ekind = is_bec ? EventKind::BEC_ERASURE : EventKind::GENERIC_ERROR;

    const std::vector<std::uint32_t> M = minimal_elements(I, n);

    nlohmann::json out;
    out["channel"] = ch.descriptor();
    out["n"] = n;
    out["info_count"] = I.size();
    out["minimal_count"] = M.size();
    nlohmann::json reports = nlohmann::json::array();

    const bool need_levels =
        std::count(which.begin(), which.end(), "union") ||
        std::count(which.begin(), which.end(), "decomposed");
    std::vector<std::vector<double>> levels;
    if (need_levels) levels = event_level_probs(ch, n, ekind);

    const bool need_pairs = std::count(which.begin(), which.end(), "tree_upper") ||
                            std::count(which.begin(), which.end(), "pair_lower");
    EventSystem es = need_pairs
                         ? (is_bec ? EventSystem::bec_erasure(ch.param(), n, M)
                                   : EventSystem::generic_error(ch, n, I))
                         : EventSystem::bec_erasure(0.0, 0, {1});

    for (const std::string& name : which) {
        BoundReport rep;
        if (name == "union") {
            ReliabilityVector r;
            r.n = n;
            r.kind = is_bec ? MetricKind::ERASURE_PROB : MetricKind::ERROR_PROB;
            r.values = levels[static_cast<std::size_t>(n)];
            rep = union_bound(r, I);
        } else if (name == "decomposed") {
            rep = decomposed_union_bound(I, levels, n);
        } else if (name == "pair_lower") {
            rep = pairwise_lower_bound(es, is_bec ? M : I);
        } else if (name == "tree_upper") {
            if (!is_bec && !unsafe)
                throw GuardError(
                    "tree_upper is only proven valid for the BEC; pass --unsafe to force");
            rep = tree_upper_bound(es, is_bec ? M : I, unsafe);
        } else {
            throw CLI::ValidationError("--bounds", "unknown bound '" + name + "'");
        }
        reports.push_back(nlohmann::json::parse(rep.to_json()));
    }
    out["bounds"] = reports;
    return {out};
}

struct SweepRow {
    double param;
    double union_b, decomposed, tree_upper, pair_lower, sim, ci95;
    std::size_t minimal_count;
};

SweepRow sweep_point(double eps, int n, double rate, long trials, std::uint64_t seed) {
    SweepRow row{};
    row.param = eps;

    const std::string desc = "bec:" + fmt(eps);
    CodeSpec code = construct_code(desc, n, rate, "error_prob");
    const std::vector<std::uint32_t> M = minimal_elements(code.info_set, n);
    row.minimal_count = M.size();

    const ChannelModel ch = ChannelModel::bec(eps);
    const auto levels = event_level_probs(ch, n, EventKind::BEC_ERASURE);
    ReliabilityVector r;
    r.n = n;
    r.kind = MetricKind::ERASURE_PROB;
    r.values = levels[static_cast<std::size_t>(n)];
    row.union_b = union_bound(r, code.info_set).value;
    row.decomposed = decomposed_union_bound(code.info_set, levels, n).value;

    const EventSystem es = EventSystem::bec_erasure(eps, n, M);
    row.tree_upper = tree_upper_bound(es, M).value;
    row.pair_lower = pairwise_lower_bound(es, M).value;

    const SimResult sim = simulate_block(code, ch, trials, seed, FailureKind::ERASURE, 1);
    row.sim = sim.estimate;
    row.ci95 = sim.ci95;
    return row;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"polar code construction, bounds and simulation"};
    app.require_subcommand(1);

    // construct
    std::string c_channel, c_metric = "error_prob", c_out;
    int c_n = 0;
    double c_rate = 0.0;
    CLI::App* construct = app.add_subcommand("construct", "select an information set");
    construct->add_option("--channel", c_channel, "channel descriptor, e.g. bec:0.5")->required();
    construct->add_option("--n", c_n, "blocklength exponent")->required()
        ->check(CLI::Range(0, 20));
    construct->add_option("--rate", c_rate, "code rate in (0,1]")->required();
    construct->add_option("--metric", c_metric, "error_prob or bhattacharyya")
        ->check(CLI::IsMember({"error_prob", "bhattacharyya"}));
    construct->add_option("--out", c_out, "output CodeSpec JSON path")->required();

    // bounds
    std::string b_code, b_channel, b_bounds = "union,decomposed,tree_upper,pair_lower", b_out;
    bool b_unsafe = false;
    CLI::App* bounds = app.add_subcommand("bounds", "evaluate block error/erasure bounds");
    bounds->add_option("--code", b_code, "CodeSpec JSON path")->required();
    bounds->add_option("--channel", b_channel, "channel descriptor")->required();
    bounds->add_option("--bounds", b_bounds, "comma list of bounds to evaluate");
    bounds->add_flag("--unsafe", b_unsafe, "allow tree_upper on non-BEC channels");
    bounds->add_option("--out", b_out, "output JSON path (default stdout)");

    // simulate
    std::string s_code, s_channel, s_failure = "error", s_out;
    long s_trials = 0;
    std::uint64_t s_seed = 1;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo block failure estimate");
    simulate->add_option("--code", s_code, "CodeSpec JSON path")->required();
    simulate->add_option("--channel", s_channel, "channel descriptor")->required();
    simulate->add_option("--trials", s_trials, "number of trials")->required();
    simulate->add_option("--seed", s_seed, "RNG seed");
    simulate->add_option("--failure", s_failure, "failure kind")
        ->check(CLI::IsMember({"error", "erasure"}));
    simulate->add_option("--out", s_out, "output JSON path (default stdout)");

    // sweep
    std::string w_channel, w_param, w_out;
    int w_n = 0;
    double w_rate = 0.0;
    long w_trials = 10000;
    std::uint64_t w_seed = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "bounds + simulation over a parameter grid");
    sweep->add_option("--channel", w_channel, "channel kind (bec)")->required();
    sweep->add_option("--param", w_param, "grid start:stop:step")->required();
    sweep->add_option("--n", w_n, "blocklength exponent")->required()->check(CLI::Range(0, 20));
    sweep->add_option("--rate", w_rate, "code rate in (0,1]")->required();
    sweep->add_option("--trials", w_trials, "trials per grid point");
    sweep->add_option("--seed", w_seed, "RNG seed");
    sweep->add_option("--out", w_out, "output CSV path")->required();

    std::vector<const char*> argv;
    argv.push_back("polarkit");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (construct->parsed()) {
            const CodeSpec code = construct_code(c_channel, c_n, c_rate, c_metric);
            code.save(c_out);
            double sum = 0.0;
            for (std::uint32_t i : code.info_set) sum += code.values[i - 1];
            std::cout << "K=" << code.info_set.size() << " metric_sum=" << fmt(sum) << '\n';
            return 0;
        }

        if (bounds->parsed()) {
            const CodeSpec code = CodeSpec::load(b_code);
            const ChannelModel ch = ChannelModel::parse(b_channel);
            std::vector<std::string> which;
            std::stringstream ss(b_bounds);
            for (std::string tok; std::getline(ss, tok, ',');)
                if (!tok.empty()) which.push_back(tok);
            const BoundsOutput out = compute_bounds(code, ch, which, b_unsafe);
            write_output(b_out, out.json.dump(2) + "\n");
            return 0;
        }

        if (simulate->parsed()) {
            if (s_trials <= 0) throw CLI::ValidationError("--trials", "must be positive");
            const CodeSpec code = CodeSpec::load(s_code);
            const ChannelModel ch = ChannelModel::parse(s_channel);
            const FailureKind kind =
                (s_failure == "erasure") ? FailureKind::ERASURE : FailureKind::ERROR;
            const SimResult res = simulate_block(code, ch, s_trials, s_seed, kind);
            write_output(s_out, res.to_json() + "\n");
            return 0;
        }

        if (sweep->parsed()) {
            if (w_channel != "bec")
                throw CLI::ValidationError("--channel", "sweep supports the bec channel");
            if (w_trials <= 0) throw CLI::ValidationError("--trials", "must be positive");
            double start = 0, stop = 0, step = 0;
            {
                std::stringstream ss(w_param);
                std::string a, b, c;
                if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') ||
                    !std::getline(ss, c))
                    throw CLI::ValidationError("--param", "expected start:stop:step");
                try {
                    start = std::stod(a);
                    stop = std::stod(b);
                    step = std::stod(c);
                } catch (const std::exception&) {
                    throw CLI::ValidationError("--param", "bad numeric literal");
                }
                if (!(step > 0.0) || stop < start - 1e-12)
                    throw CLI::ValidationError("--param", "need stop >= start and step > 0");
            }
            const int points = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;

            std::vector<SweepRow> rows(static_cast<std::size_t>(points));
            const int workers = std::min(effective_threads(), points);
            std::vector<std::thread> pool;
            std::atomic<int> next{0};
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (;;) {
                        const int p = next.fetch_add(1);
                        if (p >= points) return;
                        const double eps = start + p * step;
                        rows[static_cast<std::size_t>(p)] =
                            sweep_point(eps, w_n, w_rate, w_trials, mix_seed(w_seed, p));
                    }
                });
            }
            for (auto& th : pool) th.join();

            std::ostringstream csv;
            csv << "param,union,decomposed,tree_upper,pair_lower,sim,ci95,minimal_count\n";
            for (const SweepRow& r : rows) {
                csv << fmt(r.param) << ',' << fmt(r.union_b) << ',' << fmt(r.decomposed) << ','
                    << fmt(r.tree_upper) << ',' << fmt(r.pair_lower) << ',' << fmt(r.sim) << ','
                    << fmt(r.ci95) << ',' << r.minimal_count << '\n';
            }
            write_output(w_out, csv.str());
            return 0;
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace polarkit
