#pragma once

#include <string>
#include <string_view>

#include "polarkit/density.hpp"
#include "polarkit/rng.hpp"

namespace polarkit {

enum class ChannelKind { BEC, BSC, BIAWGN };

/// Symmetric binary-input memoryless channel, reduced to its LLR law under
/// all-zero transmission. Immutable.
class ChannelModel {
public:
    static ChannelModel bec(double erasure_prob);
    static ChannelModel bsc(double crossover_prob);
    static ChannelModel biawgn(double noise_sigma);

    /// Parses `bec:<eps>`, `bsc:<p>` or `biawgn:<sigma>`.
    static ChannelModel parse(std::string_view descriptor);

    ChannelKind kind() const { return kind_; }
    double param() const { return param_; }
    std::string descriptor() const;

private:
    ChannelModel(ChannelKind kind, double param) : kind_(kind), param_(param) {}
    ChannelKind kind_;
    double param_;
};

/// LLR density conditioned on input 0, quantized onto the given grid.
/// BEC/BSC are pure atom densities (BSC atoms rounded to the grid); BIAWGN
/// integrates the N(2/sigma^2, 4/sigma^2) law bin by bin, with tail mass
/// outside the grid range going to the +-inf atoms by sign.
LlrDensity llr_density(const ChannelModel& ch, const QuantizationSpec& quant);

/// One exact (unquantized) LLR draw under input 0.
double sample_llr(const ChannelModel& ch, RngStream& rng);

}  // namespace polarkit
