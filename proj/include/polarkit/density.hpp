#pragma once

#include <iosfwd>
#include <vector>

#include "polarkit/quantization.hpp"

namespace polarkit {

/// Quantized probability density of an LLR under all-zero transmission.
/// Mass lives on the grid points of a QuantizationSpec plus two atoms at
/// +-infinity. Densities of symmetric channels satisfy a(x) = e^x a(-x)
/// before quantization; the BEC/BSC atom densities are exact on the grid.
class LlrDensity {
public:
    explicit LlrDensity(QuantizationSpec quant)
        : quant_(quant), bins_(static_cast<std::size_t>(quant.bin_count()), 0.0) {}

    static LlrDensity point_mass(QuantizationSpec q, int grid_index);
    static LlrDensity point_mass_pos_inf(QuantizationSpec q);
    static LlrDensity point_mass_neg_inf(QuantizationSpec q);

    const QuantizationSpec& quant() const { return quant_; }

    /// Grid-index access, k in [-K, K].
    double mass(int k) const { return bins_[static_cast<std::size_t>(k + quant_.half_bins())]; }
    void add_mass(int k, double m) { bins_[static_cast<std::size_t>(k + quant_.half_bins())] += m; }

    double atom_pos_inf() const { return pos_inf_; }
    double atom_neg_inf() const { return neg_inf_; }
    void add_pos_inf(double m) { pos_inf_ += m; }
    void add_neg_inf(double m) { neg_inf_ += m; }

    const std::vector<double>& bins() const { return bins_; }

    double total_mass() const;

    /// Throws if any mass is negative or the total deviates from 1 by more
    /// than tol.
    void check_valid(double tol = 1e-10) const;

    /// Debug dump, one `value<TAB>mass` line per support point with
    /// -inf/+inf literals for the atoms.
    void dump(std::ostream& os) const;

private:
    QuantizationSpec quant_;
    std::vector<double> bins_;  // index k + K
    double neg_inf_ = 0.0;
    double pos_inf_ = 0.0;
};

/// Density of X1 + X2 (variable-node convolution). Grid sums land exactly
/// on the grid; indices beyond +-K saturate to the infinity atoms. The
/// +inf atom absorbs finite mass; (+inf) + (-inf) is split equally.
LlrDensity var_conv(const LlrDensity& a, const LlrDensity& b);

/// Density of 2*atanh(tanh(X1/2)*tanh(X2/2)) (check-node convolution) by
/// exhaustive pairing of support points; +-inf acts as a signed identity,
/// 0 is absorbing. Outputs are rounded to the nearest grid point, ties
/// toward zero.
LlrDensity chk_conv(const LlrDensity& a, const LlrDensity& b);

/// Decision-error functional: mass below zero plus half the mass at zero.
double error_prob(const LlrDensity& a);

/// Bhattacharyya parameter E[e^{-X/2}]. Rejects densities with mass at
/// -infinity (no symmetric channel produces one under all-zero input).
double bhattacharyya(const LlrDensity& a);

/// Numerically stable 2*atanh(tanh(a/2)*tanh(b/2)) for finite arguments.
double boxplus(double a, double b);

}  // namespace polarkit
