#pragma once

#include <cmath>
#include <stdexcept>

namespace polarkit {

/// Uniform symmetric LLR grid {-L_max, ..., -step, 0, step, ..., +L_max}.
class QuantizationSpec {
public:
    QuantizationSpec(double step, double half_range) : step_(step) {
        if (!(step > 0.0) || !(half_range > 0.0))
            throw std::invalid_argument("quantization: step and half_range must be positive");
        const double k = half_range / step;
        half_bins_ = static_cast<int>(std::llround(k));
        if (half_bins_ < 1 || std::abs(k - half_bins_) > 1e-9 * k)
            throw std::invalid_argument("quantization: half_range must be an integer multiple of step");
    }

    double step() const { return step_; }
    double half_range() const { return half_bins_ * step_; }
    int half_bins() const { return half_bins_; }          // K: grid indices run -K..K
    int bin_count() const { return 2 * half_bins_ + 1; }
    double value(int k) const { return k * step_; }

    /// Nearest grid index for an LLR value, ties rounded toward zero.
    /// May fall outside [-K, K]; callers saturate to the +-inf atoms.
    long round_index(double x) const {
        const double q = x / step_;
        long k = static_cast<long>(std::ceil(std::abs(q) - 0.5));
        return q < 0 ? -k : k;
    }

    bool operator==(const QuantizationSpec& o) const {
        return step_ == o.step_ && half_bins_ == o.half_bins_;
    }
    bool operator!=(const QuantizationSpec& o) const { return !(*this == o); }

private:
    double step_;
    int half_bins_;
};

/// Defaults used throughout: fine grid for scalar density evolution,
/// coarse grid for the quadratic-storage joint densities.
inline QuantizationSpec default_quant() { return QuantizationSpec(1.0 / 16.0, 40.0); }
inline QuantizationSpec default_joint_quant() { return QuantizationSpec(0.25, 20.0); }

}  // namespace polarkit
