#include "polarkit/construction.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace polarkit {

std::string metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::ERROR_PROB: return "error_prob";
        case MetricKind::ERASURE_PROB: return "erasure_prob";
        case MetricKind::BHATTACHARYYA: return "bhattacharyya";
    }
    throw std::logic_error("unreachable");
}

MetricKind metric_from_name(const std::string& name) {
    if (name == "error_prob") return MetricKind::ERROR_PROB;
    if (name == "erasure_prob") return MetricKind::ERASURE_PROB;
    if (name == "bhattacharyya") return MetricKind::BHATTACHARYYA;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

DensityEvolutionResult density_evolution_tree(const LlrDensity& base, int n) {
    if (n < 0 || n > 30) throw std::invalid_argument("density_evolution_tree: n out of range");
    DensityEvolutionResult res;
    res.n = n;
    res.level_error_prob.resize(static_cast<std::size_t>(n) + 1);

    std::vector<LlrDensity> level{base};
    res.level_error_prob[0] = {error_prob(base)};
    for (int d = 1; d <= n; ++d) {
        std::vector<LlrDensity> next;
        next.reserve(level.size() * 2);
        for (const LlrDensity& a : level) {
            next.push_back(chk_conv(a, a));  // subchannel 2i-1
            ++res.conv_count;
            next.push_back(var_conv(a, a));  // subchannel 2i
            ++res.conv_count;
        }
        level = std::move(next);
        auto& probs = res.level_error_prob[static_cast<std::size_t>(d)];
        probs.reserve(level.size());
        for (const LlrDensity& a : level) probs.push_back(error_prob(a));
    }

    res.error_prob.n = n;
    res.error_prob.kind = MetricKind::ERROR_PROB;
    res.error_prob.values = res.level_error_prob.back();
    res.bhattacharyya.n = n;
    res.bhattacharyya.kind = MetricKind::BHATTACHARYYA;
    res.bhattacharyya.values.reserve(level.size());
    for (const LlrDensity& a : level) res.bhattacharyya.values.push_back(bhattacharyya(a));
    return res;
}

std::vector<std::uint32_t> select_info_set(const ReliabilityVector& r, int K) {
    const std::size_t N = r.size();
    if (K < 1 || static_cast<std::size_t>(K) > N)
        throw std::invalid_argument("select_info_set: K out of range");

    std::vector<std::uint32_t> idx(N);
    std::iota(idx.begin(), idx.end(), 1u);
    // smaller metric first; equal metrics prefer the larger index
    auto better = [&r](std::uint32_t a, std::uint32_t b) {
        const double ma = r.at(a), mb = r.at(b);
        if (ma != mb) return ma < mb;
        return a > b;
    };
    std::nth_element(idx.begin(), idx.begin() + K, idx.end(), better);
    idx.resize(static_cast<std::size_t>(K));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::uint32_t> minimal_elements(const std::vector<std::uint32_t>& I, int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i : I) {
        bool minimal = true;
        for (std::uint32_t j : I) {
            if (j != i && precedes(j, i, n)) {
                minimal = false;
                break;
            }
        }
        if (minimal) out.push_back(i);
    }
    return out;
}

std::string CodeSpec::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["channel"] = channel;
    j["metric"] = metric_name(metric);
    j["info_set"] = info_set;
    j["values"] = values;
    return j.dump(2);
}

CodeSpec CodeSpec::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CodeSpec c;
    c.n = j.at("n").get<int>();
    c.channel = j.at("channel").get<std::string>();
    c.metric = metric_from_name(j.at("metric").get<std::string>());
    c.info_set = j.at("info_set").get<std::vector<std::uint32_t>>();
    c.values = j.at("values").get<std::vector<double>>();
    if (c.n < 0 || c.n > 30) throw std::invalid_argument("code spec: bad n");
    const std::uint32_t N = 1u << c.n;
    for (std::uint32_t i : c.info_set)
        if (i < 1 || i > N) throw std::invalid_argument("code spec: info index out of range");
    if (!std::is_sorted(c.info_set.begin(), c.info_set.end()) ||
        std::adjacent_find(c.info_set.begin(), c.info_set.end()) != c.info_set.end())
        throw std::invalid_argument("code spec: info_set must be sorted and distinct");
    return c;
}

void CodeSpec::save(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << to_json() << '\n';
}

CodeSpec CodeSpec::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return from_json(text);
}

}  // namespace polarkit
