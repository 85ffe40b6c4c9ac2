#include "polarkit/channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace polarkit {

namespace {

double parse_real(std::string_view s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(std::string(s), &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("channel: bad numeric literal '" + std::string(s) + "'");
    }
}

double gaussian_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

ChannelModel ChannelModel::bec(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("bec: erasure probability must be in [0,1]");
    return ChannelModel(ChannelKind::BEC, eps);
}

ChannelModel ChannelModel::bsc(double p) {
    if (!(p >= 0.0 && p <= 0.5))
        throw std::invalid_argument("bsc: crossover probability must be in [0,1/2]");
    return ChannelModel(ChannelKind::BSC, p);
}

ChannelModel ChannelModel::biawgn(double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("biawgn: sigma must be positive");
    return ChannelModel(ChannelKind::BIAWGN, sigma);
}

ChannelModel ChannelModel::parse(std::string_view desc) {
    const auto colon = desc.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("channel: expected '<kind>:<param>', got '" + std::string(desc) + "'");
    const std::string_view kind = desc.substr(0, colon);
    const double param = parse_real(desc.substr(colon + 1));
    if (kind == "bec") return bec(param);
    if (kind == "bsc") return bsc(param);
    if (kind == "biawgn") return biawgn(param);
    throw std::invalid_argument("channel: unknown kind '" + std::string(kind) + "'");
}

std::string ChannelModel::descriptor() const {
    std::ostringstream os;
    switch (kind_) {
        case ChannelKind::BEC: os << "bec:"; break;
        case ChannelKind::BSC: os << "bsc:"; break;
        case ChannelKind::BIAWGN: os << "biawgn:"; break;
    }
    os << param_;
    return os.str();
}

LlrDensity llr_density(const ChannelModel& ch, const QuantizationSpec& quant) {
    LlrDensity d(quant);
    const int K = quant.half_bins();
    switch (ch.kind()) {
        case ChannelKind::BEC: {
            const double eps = ch.param();
            d.add_mass(0, eps);
            d.add_pos_inf(1.0 - eps);
            return d;
        }
        case ChannelKind::BSC: {
            const double p = ch.param();
            if (p == 0.0) {
                d.add_pos_inf(1.0);
                return d;
            }
            const double m = std::log((1.0 - p) / p);
            const long k = quant.round_index(m);
            if (k > K)
                throw std::invalid_argument("bsc: grid range too small for atom magnitude");
            d.add_mass(static_cast<int>(k), 1.0 - p);
            d.add_mass(static_cast<int>(-k), p);
            return d;
        }
        case ChannelKind::BIAWGN: {
            const double sigma = ch.param();
            const double mean = 2.0 / (sigma * sigma);
            const double sd = 2.0 / sigma;
            // bin edges halfway between grid points; shared evaluations keep
            // the total telescoping to 1
            double lower_cdf = gaussian_cdf((quant.value(-K) - 0.5 * quant.step() - mean) / sd);
            d.add_neg_inf(lower_cdf);
            for (int k = -K; k <= K; ++k) {
                const double upper = gaussian_cdf((quant.value(k) + 0.5 * quant.step() - mean) / sd);
                d.add_mass(k, upper - lower_cdf);
                lower_cdf = upper;
            }
            d.add_pos_inf(1.0 - lower_cdf);
            return d;
        }
    }
    throw std::logic_error("unreachable");
}

double sample_llr(const ChannelModel& ch, RngStream& rng) {
    switch (ch.kind()) {
        case ChannelKind::BEC:
            return rng.uniform01() < ch.param() ? 0.0 : std::numeric_limits<double>::infinity();
        case ChannelKind::BSC: {
            const double p = ch.param();
            if (p == 0.0) return std::numeric_limits<double>::infinity();
            const double m = std::log((1.0 - p) / p);
            return rng.uniform01() < p ? -m : m;
        }
        case ChannelKind::BIAWGN: {
            const double sigma = ch.param();
            const double y = 1.0 + sigma * rng.normal();
            return 2.0 * y / (sigma * sigma);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace polarkit
