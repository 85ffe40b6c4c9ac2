#include "polarkit/joint_density.hpp"

#include <cmath>
#include <stdexcept>

namespace polarkit {

JointLlrDensity::JointLlrDensity(QuantizationSpec quant)
    : quant_(quant),
      axis_(quant.bin_count() + 2),
      m_(static_cast<std::size_t>(axis_) * axis_, 0.0) {}

JointLlrDensity JointLlrDensity::diagonal(const LlrDensity& a) {
    JointLlrDensity j(a.quant());
    const int K = a.quant().half_bins();
    for (int k = -K; k <= K; ++k) {
        const double m = a.mass(k);
        if (m > 0.0) j.at(j.code_of_grid(k), j.code_of_grid(k)) += m;
    }
    j.at(j.code_neg_inf(), j.code_neg_inf()) += a.atom_neg_inf();
    j.at(j.code_pos_inf(), j.code_pos_inf()) += a.atom_pos_inf();
    return j;
}

double JointLlrDensity::total_mass() const {
    double s = 0.0;
    for (double v : m_) s += v;
    return s;
}

void JointLlrDensity::check_valid(double tol) const {
    for (double v : m_)
        if (v < 0.0) throw std::domain_error("joint density: negative mass");
    if (std::abs(total_mass() - 1.0) > tol)
        throw std::domain_error("joint density: total mass deviates from 1");
}

namespace {

// axis code classification helpers operating on a density's geometry
struct AxisGeom {
    int half_bins;
    int neg_inf;
    int pos_inf;
    int grid(int k) const { return k + half_bins + 1; }
    int index_of(int code) const { return code - half_bins - 1; }  // grid codes only
    bool is_neg_inf(int c) const { return c == neg_inf; }
    bool is_pos_inf(int c) const { return c == pos_inf; }
    bool is_finite(int c) const { return c != neg_inf && c != pos_inf; }
};

struct Outcome {
    int code;
    double weight;
};

// variable combine: sum of grid indices, saturating to the infinity slots;
// opposite infinities split equally
int var_combine(const AxisGeom& g, int c1, int c2, Outcome out[2]) {
    if (g.is_finite(c1) && g.is_finite(c2)) {
        const int k = g.index_of(c1) + g.index_of(c2);
        if (k > g.half_bins) out[0] = {g.pos_inf, 1.0};
        else if (k < -g.half_bins) out[0] = {g.neg_inf, 1.0};
        else out[0] = {g.grid(k), 1.0};
        return 1;
    }
    if (g.is_finite(c2)) {  // c1 infinite
        out[0] = {c1, 1.0};
        return 1;
    }
    if (g.is_finite(c1)) {
        out[0] = {c2, 1.0};
        return 1;
    }
    if (c1 == c2) {
        out[0] = {c1, 1.0};
        return 1;
    }
    out[0] = {g.neg_inf, 0.5};
    out[1] = {g.pos_inf, 0.5};
    return 2;
}

// check combine: +-inf is a signed identity, boxplus on the grid
int chk_combine(const AxisGeom& g, const std::vector<double>& corr, int c1, int c2,
                Outcome out[1]) {
    if (g.is_pos_inf(c1)) { out[0] = {c2, 1.0}; return 1; }
    if (g.is_pos_inf(c2)) { out[0] = {c1, 1.0}; return 1; }
    if (g.is_neg_inf(c1)) {
        out[0] = {g.is_neg_inf(c2) ? g.pos_inf : g.grid(-g.index_of(c2)), 1.0};
        return 1;
    }
    if (g.is_neg_inf(c2)) {
        out[0] = {g.grid(-g.index_of(c1)), 1.0};
        return 1;
    }
    const int i = g.index_of(c1), j = g.index_of(c2);
    const int A = std::abs(i), B = std::abs(j);
    const double sign = ((i < 0) != (j < 0)) ? -1.0 : 1.0;
    const double qidx = sign * (std::min(A, B) + corr[static_cast<std::size_t>(A + B)] -
                                corr[static_cast<std::size_t>(std::abs(A - B))]);
    long k = static_cast<long>(std::ceil(std::abs(qidx) - 0.5));
    if (qidx < 0.0) k = -k;
    if (k > g.half_bins) k = g.half_bins;
    if (k < -g.half_bins) k = -g.half_bins;
    out[0] = {g.grid(static_cast<int>(k)), 1.0};
    return 1;
}

struct Cell {
    int cx, cy;
    double mass;
};

// Per-axis combine lookup: code of the single outcome, or -1 for the one
// splitting case (opposite infinities under the variable rule).
std::vector<int> combine_table(const AxisGeom& g, const std::vector<double>& corr, bool is_var,
                               int axis) {
    std::vector<int> table(static_cast<std::size_t>(axis) * axis);
    Outcome out[2];
    for (int c1 = 0; c1 < axis; ++c1) {
        for (int c2 = 0; c2 < axis; ++c2) {
            const int n = is_var ? var_combine(g, c1, c2, out) : chk_combine(g, corr, c1, c2, out);
            table[static_cast<std::size_t>(c1) * axis + c2] = (n == 1) ? out[0].code : -1;
        }
    }
    return table;
}

}  // namespace

JointLlrDensity joint_conv(const JointLlrDensity& a, JointConvMode mode) {
    const QuantizationSpec q = a.quant();
    const int axis = a.axis_size();
    const AxisGeom g{q.half_bins(), 0, axis - 1};

    std::vector<double> corr(static_cast<std::size_t>(2 * g.half_bins + 1));
    for (int t = 0; t <= 2 * g.half_bins; ++t)
        corr[static_cast<std::size_t>(t)] = std::log1p(std::exp(-t * q.step())) / q.step();

    std::vector<Cell> support;
    for (int cx = 0; cx < axis; ++cx)
        for (int cy = 0; cy < axis; ++cy)
            if (a.at(cx, cy) > 0.0) support.push_back({cx, cy, a.at(cx, cy)});

    const bool x_is_var = (mode == JointConvMode::VV || mode == JointConvMode::VC);
    const bool y_is_var = (mode == JointConvMode::VV || mode == JointConvMode::CV);
    const std::vector<int> tx = combine_table(g, corr, x_is_var, axis);
    const std::vector<int> ty = y_is_var == x_is_var ? tx : combine_table(g, corr, y_is_var, axis);

    JointLlrDensity out(q);
    Outcome ox[2], oy[2];
    for (const Cell& u : support) {
        const int* tx_row = tx.data() + static_cast<std::size_t>(u.cx) * axis;
        const int* ty_row = ty.data() + static_cast<std::size_t>(u.cy) * axis;
        for (const Cell& v : support) {
            const int cx = tx_row[v.cx];
            const int cy = ty_row[v.cy];
            const double m = u.mass * v.mass;
            if (cx >= 0 && cy >= 0) {
                out.at(cx, cy) += m;
                continue;
            }
            const int nx = x_is_var ? var_combine(g, u.cx, v.cx, ox)
                                    : chk_combine(g, corr, u.cx, v.cx, ox);
            const int ny = y_is_var ? var_combine(g, u.cy, v.cy, oy)
                                    : chk_combine(g, corr, u.cy, v.cy, oy);
            for (int ix = 0; ix < nx; ++ix)
                for (int iy = 0; iy < ny; ++iy)
                    out.at(ox[ix].code, oy[iy].code) += m * ox[ix].weight * oy[iy].weight;
        }
    }
    return out;
}

JointEventProbs joint_event_probs(const JointLlrDensity& a) {
    const int zero = a.code_of_grid(0);
    auto err_weight = [&](int code) {
        if (code == zero) return 0.5;
        return (code < zero) ? 1.0 : 0.0;  // -inf and negative grid codes
    };
    JointEventProbs p{0.0, 0.0, 0.0, 0.0};
    for (int cx = 0; cx < a.axis_size(); ++cx) {
        const double wx = err_weight(cx);
        for (int cy = 0; cy < a.axis_size(); ++cy) {
            const double m = a.at(cx, cy);
            if (m == 0.0) continue;
            const double wy = err_weight(cy);
            p.ee += m * wx * wy;
            p.ec += m * wx * (1.0 - wy);
            p.ce += m * (1.0 - wx) * wy;
            p.cc += m * (1.0 - wx) * (1.0 - wy);
        }
    }
    return p;
}

LlrDensity JointLlrDensity::marginal_first() const {
    LlrDensity d(quant_);
    const int K = quant_.half_bins();
    for (int cx = 0; cx < axis_; ++cx) {
        double s = 0.0;
        for (int cy = 0; cy < axis_; ++cy) s += at(cx, cy);
        if (cx == code_neg_inf()) d.add_neg_inf(s);
        else if (cx == code_pos_inf()) d.add_pos_inf(s);
        else d.add_mass(cx - K - 1, s);
    }
    return d;
}

LlrDensity JointLlrDensity::marginal_second() const {
    LlrDensity d(quant_);
    const int K = quant_.half_bins();
    for (int cy = 0; cy < axis_; ++cy) {
        double s = 0.0;
        for (int cx = 0; cx < axis_; ++cx) s += at(cx, cy);
        if (cy == code_neg_inf()) d.add_neg_inf(s);
        else if (cy == code_pos_inf()) d.add_pos_inf(s);
        else d.add_mass(cy - K - 1, s);
    }
    return d;
}

}  // namespace polarkit
