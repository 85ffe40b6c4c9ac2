#include "polarkit/density.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace polarkit {

LlrDensity LlrDensity::point_mass(QuantizationSpec q, int grid_index) {
    if (std::abs(grid_index) > q.half_bins())
        throw std::invalid_argument("point_mass: grid index outside the quantizer range");
    LlrDensity d(q);
    d.add_mass(grid_index, 1.0);
    return d;
}

LlrDensity LlrDensity::point_mass_pos_inf(QuantizationSpec q) {
    LlrDensity d(q);
    d.pos_inf_ = 1.0;
    return d;
}

LlrDensity LlrDensity::point_mass_neg_inf(QuantizationSpec q) {
    LlrDensity d(q);
    d.neg_inf_ = 1.0;
    return d;
}

double LlrDensity::total_mass() const {
    double s = neg_inf_ + pos_inf_;
    for (double m : bins_) s += m;
    return s;
}

void LlrDensity::check_valid(double tol) const {
    if (neg_inf_ < 0.0 || pos_inf_ < 0.0)
        throw std::domain_error("density: negative atom mass");
    for (double m : bins_)
        if (m < 0.0) throw std::domain_error("density: negative bin mass");
    if (std::abs(total_mass() - 1.0) > tol)
        throw std::domain_error("density: total mass deviates from 1");
}

void LlrDensity::dump(std::ostream& os) const {
    if (neg_inf_ > 0.0) os << "-inf\t" << neg_inf_ << '\n';
    const int K = quant_.half_bins();
    for (int k = -K; k <= K; ++k)
        if (mass(k) > 0.0) os << quant_.value(k) << '\t' << mass(k) << '\n';
    if (pos_inf_ > 0.0) os << "+inf\t" << pos_inf_ << '\n';
}

namespace {

struct Support {
    std::vector<int> idx;
    std::vector<double> mass;
};

Support gather_support(const LlrDensity& d) {
    Support s;
    const int K = d.quant().half_bins();
    for (int k = -K; k <= K; ++k) {
        const double m = d.mass(k);
        if (m > 0.0) {
            s.idx.push_back(k);
            s.mass.push_back(m);
        }
    }
    return s;
}

void require_matching(const LlrDensity& a, const LlrDensity& b) {
    if (a.quant() != b.quant())
        throw std::invalid_argument("convolution: mismatched quantization specs");
}

// canonical operand order makes both convolutions bitwise commutative
bool canonically_before(const LlrDensity& a, const LlrDensity& b) {
    if (a.atom_neg_inf() != b.atom_neg_inf()) return a.atom_neg_inf() < b.atom_neg_inf();
    if (a.atom_pos_inf() != b.atom_pos_inf()) return a.atom_pos_inf() < b.atom_pos_inf();
    return a.bins() <= b.bins();
}

}  // namespace

LlrDensity var_conv(const LlrDensity& a_in, const LlrDensity& b_in) {
    const bool keep = canonically_before(a_in, b_in);
    const LlrDensity& a = keep ? a_in : b_in;
    const LlrDensity& b = keep ? b_in : a_in;
    require_matching(a, b);
    const QuantizationSpec q = a.quant();
    const int K = q.half_bins();
    LlrDensity out(q);

    const Support sa = gather_support(a);
    const Support sb = gather_support(b);

    for (std::size_t ia = 0; ia < sa.idx.size(); ++ia) {
        const int i = sa.idx[ia];
        const double mi = sa.mass[ia];
        for (std::size_t ib = 0; ib < sb.idx.size(); ++ib) {
            const int k = i + sb.idx[ib];
            const double m = mi * sb.mass[ib];
            if (k > K)
                out.add_pos_inf(m);
            else if (k < -K)
                out.add_neg_inf(m);
            else
                out.add_mass(k, m);
        }
    }

    // infinity atoms absorb any finite partner
    double fin_a = 0.0, fin_b = 0.0;
    for (double m : sa.mass) fin_a += m;
    for (double m : sb.mass) fin_b += m;
    out.add_pos_inf(a.atom_pos_inf() * fin_b + fin_a * b.atom_pos_inf() +
                    a.atom_pos_inf() * b.atom_pos_inf());
    out.add_neg_inf(a.atom_neg_inf() * fin_b + fin_a * b.atom_neg_inf() +
                    a.atom_neg_inf() * b.atom_neg_inf());
    // opposite infinities: probability-zero event for shipped channels,
    // split to conserve mass
    const double clash = a.atom_pos_inf() * b.atom_neg_inf() + a.atom_neg_inf() * b.atom_pos_inf();
    if (clash > 0.0) {
        out.add_pos_inf(0.5 * clash);
        out.add_neg_inf(0.5 * clash);
    }
    return out;
}

double boxplus(double a, double b) {
    // 2 atanh(tanh(a/2) tanh(b/2)) = s (min(|a|,|b|) + log1p(e^-(|a|+|b|))
    //                                   - log1p(e^-||a|-|b||)),  s = sign(ab)
    const double A = std::abs(a), B = std::abs(b);
    const double sign = ((a < 0.0) != (b < 0.0)) ? -1.0 : 1.0;
    return sign * (std::min(A, B) + std::log1p(std::exp(-(A + B))) -
                   std::log1p(std::exp(-std::abs(A - B))));
}

LlrDensity chk_conv(const LlrDensity& a_in, const LlrDensity& b_in) {
    const bool keep = canonically_before(a_in, b_in);
    const LlrDensity& a = keep ? a_in : b_in;
    const LlrDensity& b = keep ? b_in : a_in;
    require_matching(a, b);
    const QuantizationSpec q = a.quant();
    const int K = q.half_bins();
    LlrDensity out(q);

    const Support sa = gather_support(a);
    const Support sb = gather_support(b);

    // corr[t] = log1p(exp(-t*step)) / step, so the pairing below works in
    // grid-index units throughout
    std::vector<double> corr(static_cast<std::size_t>(2 * K + 1));
    for (int t = 0; t <= 2 * K; ++t)
        corr[static_cast<std::size_t>(t)] = std::log1p(std::exp(-t * q.step())) / q.step();

    for (std::size_t ia = 0; ia < sa.idx.size(); ++ia) {
        const int i = sa.idx[ia];
        const int A = std::abs(i);
        const double mi = sa.mass[ia];
        for (std::size_t ib = 0; ib < sb.idx.size(); ++ib) {
            const int j = sb.idx[ib];
            const int B = std::abs(j);
            const double sign = ((i < 0) != (j < 0)) ? -1.0 : 1.0;
            const double qidx = sign * (std::min(A, B) +
                                        corr[static_cast<std::size_t>(A + B)] -
                                        corr[static_cast<std::size_t>(std::abs(A - B))]);
            long k = static_cast<long>(std::ceil(std::abs(qidx) - 0.5));
            if (qidx < 0.0) k = -k;
            if (k > K) k = K;  // |boxplus| <= min(|a|,|b|); guard fp dust
            if (k < -K) k = -K;
            out.add_mass(static_cast<int>(k), mi * sb.mass[ib]);
        }
    }

    // +inf is the identity, -inf reflects the partner, 0 stays absorbing
    if (a.atom_pos_inf() > 0.0) {
        for (std::size_t ib = 0; ib < sb.idx.size(); ++ib)
            out.add_mass(sb.idx[ib], a.atom_pos_inf() * sb.mass[ib]);
    }
    if (a.atom_neg_inf() > 0.0) {
        for (std::size_t ib = 0; ib < sb.idx.size(); ++ib)
            out.add_mass(-sb.idx[ib], a.atom_neg_inf() * sb.mass[ib]);
    }
    if (b.atom_pos_inf() > 0.0) {
        for (std::size_t ia = 0; ia < sa.idx.size(); ++ia)
            out.add_mass(sa.idx[ia], b.atom_pos_inf() * sa.mass[ia]);
    }
    if (b.atom_neg_inf() > 0.0) {
        for (std::size_t ia = 0; ia < sa.idx.size(); ++ia)
            out.add_mass(-sa.idx[ia], b.atom_neg_inf() * sa.mass[ia]);
    }
    out.add_pos_inf(a.atom_pos_inf() * b.atom_pos_inf() + a.atom_neg_inf() * b.atom_neg_inf());
    out.add_neg_inf(a.atom_pos_inf() * b.atom_neg_inf() + a.atom_neg_inf() * b.atom_pos_inf());
    return out;
}

double error_prob(const LlrDensity& a) {
    double p = a.atom_neg_inf();
    for (int k = -a.quant().half_bins(); k < 0; ++k) p += a.mass(k);
    return p + 0.5 * a.mass(0);
}

double bhattacharyya(const LlrDensity& a) {
    // mass at -infinity makes E[e^{-X/2}] diverge; masses below the global
    // density tolerance are numerical tail dust (BIAWGN binning) and dropped
    if (a.atom_neg_inf() > 1e-12)
        throw std::domain_error("bhattacharyya: density has mass at -infinity");
    double z = 0.0;
    const int K = a.quant().half_bins();
    for (int k = -K; k <= K; ++k) {
        const double m = a.mass(k);
        if (m > 0.0) z += m * std::exp(-0.5 * a.quant().value(k));
    }
    return z;  // +inf atom contributes 0
}

}  // namespace polarkit
