#pragma once

#include <vector>

#include "polarkit/density.hpp"

namespace polarkit {

/// Which combine acts on each coordinate of a joint convolution: V is the
/// variable-node sum, C the check-node tanh rule. The first letter applies
/// to the first coordinate.
enum class JointConvMode { VV, VC, CV, CC };

struct JointEventProbs {
    double ee;  // P(A_i and A_j)        both decisions err
    double ec;  // P(A_i and A_j^c)      first errs, second correct
    double ce;  // P(A_i^c and A_j)
    double cc;  // P(A_i^c and A_j^c)
};

/// Quantized 2-D joint LLR density for a pair of subchannels. Each axis is
/// the grid of a QuantizationSpec extended by -inf and +inf slots.
class JointLlrDensity {
public:
    explicit JointLlrDensity(QuantizationSpec quant);

    /// Base case of joint density evolution: both coordinates carry the same
    /// draw from `a` (the Dirac-diagonal density delta(x-y) a(x)).
    static JointLlrDensity diagonal(const LlrDensity& a);

    const QuantizationSpec& quant() const { return quant_; }
    int axis_size() const { return axis_; }

    /// Axis codes: 0 = -inf, 1..2K+1 = grid indices -K..K, 2K+2 = +inf.
    double& at(int ax, int ay) { return m_[static_cast<std::size_t>(ax) * axis_ + ay]; }
    double at(int ax, int ay) const { return m_[static_cast<std::size_t>(ax) * axis_ + ay]; }

    int code_of_grid(int k) const { return k + quant_.half_bins() + 1; }
    int code_neg_inf() const { return 0; }
    int code_pos_inf() const { return axis_ - 1; }

    double total_mass() const;
    void check_valid(double tol = 1e-8) const;

    LlrDensity marginal_first() const;
    LlrDensity marginal_second() const;

private:
    QuantizationSpec quant_;
    int axis_;
    std::vector<double> m_;
};

/// Self-convolution of a joint density: the law of
/// (combine_x(X1,X2), combine_y(Y1,Y2)) for two independent draws of (X,Y),
/// with the per-coordinate combine picked by `mode`.
JointLlrDensity joint_conv(const JointLlrDensity& a, JointConvMode mode);

/// Quadrant probabilities with mass at coordinate zero split half/half in
/// that coordinate (independent tie-break coins).
JointEventProbs joint_event_probs(const JointLlrDensity& a);

}  // namespace polarkit
