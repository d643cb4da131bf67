#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoball/jet.hpp"
#include "holoball/lines.hpp"
#include "holoball/series2d.hpp"

namespace holoball {

// Everything the reconstruction is allowed to know about the target
// function: for each middle line the expansions in v of
// (1/s!) (d^s f / d z1^s)(eta v, v) for s below the line's multiplicity,
// plus the axis coefficient rows a_{u1,.} for u1 < m1 and columns a_{.,un}
// for un < mn. No other coefficient of f appears here.
struct LineData {
    int degree = 0;
    int m1 = 0;
    int mn = 0;
    std::vector<Complex> middle_etas;
    std::vector<int> middle_mults;
    // middle[i][s][l]: coefficient of v^l for derivative order s on line i.
    std::vector<std::vector<std::vector<Complex>>> middle;
    std::vector<std::vector<Complex>> rows; // rows[u1][k2] = a_{u1,k2}
    std::vector<std::vector<Complex>> cols; // cols[un][k1] = a_{k1,un}
};

// Samples a truncated series on the configured lines. This is the only
// bridge between full coefficient knowledge and the measurement model.
inline LineData extract_line_data(const TaylorSeries2& f, const LineConfig& cfg) {
    LineData d;
    d.degree = f.degree();
    d.m1 = cfg.m1();
    d.mn = cfg.mn();
    for (const MiddleLine& ml : cfg.middle()) {
        d.middle_etas.push_back(ml.eta);
        d.middle_mults.push_back(ml.mult);
        std::vector<std::vector<Complex>> per_line;
        for (int s = 0; s < ml.mult; ++s) {
            per_line.push_back(line_restriction_jets(f, ml.eta, s));
        }
        d.middle.push_back(std::move(per_line));
    }
    for (int u1 = 0; u1 < cfg.m1(); ++u1) {
        d.rows.push_back(axis_coefficients(f, Axis::z1_zero, u1));
    }
    for (int un = 0; un < cfg.mn(); ++un) {
        d.cols.push_back(axis_coefficients(f, Axis::z2_zero, un));
    }
    return d;
}

namespace detail {

// Input feed for the assembly: slice-polynomial jets at the middle nodes and
// the two axis coefficient families. The two implementations are the
// full-coefficient path and the measured-line-data path; they must agree to
// rounding, which the test suite checks explicitly.
class SliceSource {
public:
    virtual ~SliceSource() = default;
    virtual int degree() const = 0;
    // Jets about middle node i (0-based) of every slice polynomial
    // sum_{k1+k2=l} a_{k1,k2} t^{k1}, l = 0..degree, at the given order.
    virtual std::vector<Jet> slice_jets(int i, int order) const = 0;
    virtual std::vector<Complex> row(int u1) const = 0;
    virtual std::vector<Complex> col(int un) const = 0;
};

class CoeffSource final : public SliceSource {
public:
    CoeffSource(const TaylorSeries2& f, const LineConfig& cfg) : f_(&f), cfg_(&cfg) {}

    int degree() const override { return f_->degree(); }

    std::vector<Jet> slice_jets(int i, int order) const override {
        const Complex eta = cfg_->middle().at(static_cast<std::size_t>(i)).eta;
        return slice_sums(*f_, Jet::identity(eta, order));
    }

    std::vector<Complex> row(int u1) const override {
        return axis_coefficients(*f_, Axis::z1_zero, u1);
    }

    std::vector<Complex> col(int un) const override {
        return axis_coefficients(*f_, Axis::z2_zero, un);
    }

private:
    const TaylorSeries2* f_;
    const LineConfig* cfg_;
};

class DataSource final : public SliceSource {
public:
    explicit DataSource(const LineData& d) : d_(&d) {}

    int degree() const override { return d_->degree; }

    // The derivative arrays of the line restriction are exactly the jet
    // coefficients of the slice polynomials: coefficient s of the jet of
    // S_l at the node equals entry l - s of the order-s array.
    std::vector<Jet> slice_jets(int i, int order) const override {
        const auto& per_line = d_->middle.at(static_cast<std::size_t>(i));
        if (order >= static_cast<int>(per_line.size())) {
            throw std::invalid_argument("LineData: jet order beyond measured multiplicity");
        }
        const Complex eta = d_->middle_etas.at(static_cast<std::size_t>(i));
        std::vector<Jet> out;
        out.reserve(static_cast<std::size_t>(d_->degree) + 1);
        for (int l = 0; l <= d_->degree; ++l) {
            std::vector<Complex> c(static_cast<std::size_t>(order) + 1, Complex(0.0, 0.0));
            for (int s = 0; s <= std::min(order, l); ++s) {
                c[static_cast<std::size_t>(s)] =
                    per_line[static_cast<std::size_t>(s)][static_cast<std::size_t>(l - s)];
            }
            out.emplace_back(eta, std::move(c));
        }
        return out;
    }

    std::vector<Complex> row(int u1) const override {
        return d_->rows.at(static_cast<std::size_t>(u1));
    }

    std::vector<Complex> col(int un) const override {
        return d_->cols.at(static_cast<std::size_t>(un));
    }

private:
    const LineData* d_;
};

inline void require_data_matches(const LineData& d, const LineConfig& cfg) {
    if (d.m1 != cfg.m1() || d.mn != cfg.mn() ||
        static_cast<int>(d.middle_etas.size()) != cfg.middle_count()) {
        throw std::invalid_argument("LineData: shape differs from configuration");
    }
    for (int i = 0; i < cfg.middle_count(); ++i) {
        const auto& ml = cfg.middle()[static_cast<std::size_t>(i)];
        if (d.middle_etas[static_cast<std::size_t>(i)] != ml.eta ||
            d.middle_mults[static_cast<std::size_t>(i)] != ml.mult) {
            throw std::invalid_argument("LineData: lines differ from configuration");
        }
    }
}

// Workspace for one active middle node: identity jet, its reciprocal, slice
// jets, and the degree-raising factor B(t) = (z2 + |eta|^2 z1/t)/(1+|eta|^2),
// all expanded about the node at order mult-1.
struct NodeWork {
    int index = 0;
    Complex eta;
    double mod2 = 0.0;
    int mult = 0;
    int order = 0;
    Jet t, invt, B;
    std::vector<Jet> S;

    NodeWork(const SliceSource& src, const LineConfig& cfg, int i, Complex z1, Complex z2)
        : index(i),
          eta(cfg.middle()[static_cast<std::size_t>(i)].eta),
          mod2(std::norm(eta)),
          mult(cfg.middle()[static_cast<std::size_t>(i)].mult),
          order(mult - 1),
          t(Jet::identity(eta, mult - 1)),
          invt(t.reciprocal()),
          B((Jet::constant(z2, eta, mult - 1) + mod2 * z1 * invt) * Complex(1.0 / (1.0 + mod2), 0.0)),
          S(src.slice_jets(i, mult - 1)) {}
};

// sum_{l = lo}^{D} S_l B^{l - lo} by Horner from the top degree down.
inline Jet degree_sum(const NodeWork& w, int lo) {
    const int D = static_cast<int>(w.S.size()) - 1;
    Jet acc = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
    for (int l = D; l >= lo; --l) acc = acc * w.B + w.S[static_cast<std::size_t>(l)];
    return acc;
}

// Weight (1 + |eta_node|^2 eta_group / t) / (1 + |eta_node|^2). The group
// slope enters the numerator; the node slope sets the modulus scale.
inline Jet group_weight(const NodeWork& w, Complex eta_group) {
    return (Jet::constant(Complex(1.0, 0.0), w.eta, w.order) + (w.mod2 * eta_group) * w.invt) *
           Complex(1.0 / (1.0 + w.mod2), 0.0);
}

// Finite sum sum_{k1 <= u1} t^{k1} sum_{k2 >= T-k1} a_{k1,k2} z2^{k1+k2-T}
// built from the axis rows; the part of the series the z1-axis data pins
// down above the degree threshold T.
inline Jet row_tail_jet(const SliceSource& src, const NodeWork& w, int u1, int T, Complex z2) {
    const int D = src.degree();
    Jet acc = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
    Jet tpow = Jet::constant(Complex(1.0, 0.0), w.eta, w.order);
    for (int k1 = 0; k1 <= u1; ++k1) {
        const auto row = src.row(k1);
        Complex s(0.0, 0.0);
        const int k2lo = std::max(0, T - k1);
        Complex z2pow = std::pow(z2, Complex(static_cast<double>(k1 + k2lo - T), 0.0));
        for (int k2 = k2lo; k1 + k2 <= D; ++k2) {
            s += row[static_cast<std::size_t>(k2)] * z2pow;
            z2pow *= z2;
        }
        acc = acc + s * tpow;
        tpow = tpow * w.t;
    }
    return acc;
}

// Finite sum sum_{k2 <= mn-1} t^{T-1-k2} sum_{k1 >= T-k2} a_{k1,k2} z1^{k1+k2-T},
// the analogous pinned part from the z2-axis columns. Exponent T-1-k2 is
// nonnegative whenever T counts at least the z2-axis multiplicity.
inline Jet col_tail_jet(const SliceSource& src, const NodeWork& w, int mn, int T, Complex z1) {
    Jet acc = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
    const int D = src.degree();
    for (int k2 = 0; k2 < mn; ++k2) {
        if (T - 1 - k2 < 0) throw std::logic_error("col_tail_jet: negative power of t");
        const auto col = src.col(k2);
        Complex s(0.0, 0.0);
        const int k1lo = std::max(0, T - k2);
        Complex z1pow = std::pow(z1, Complex(static_cast<double>(k1lo + k2 - T), 0.0));
        for (int k1 = k1lo; k1 + k2 <= D; ++k1) {
            s += col[static_cast<std::size_t>(k1)] * z1pow;
            z1pow *= z1;
        }
        acc = acc + s * w.t.pow(T - 1 - k2);
    }
    return acc;
}

// prod over middle lines j != skip, j in [from, end) of (t - eta_j)^{m_j},
// expanded about w's node.
inline Jet middle_cofactor_jet(const LineConfig& cfg, const NodeWork& w, int from, int skip) {
    Jet acc = Jet::constant(Complex(1.0, 0.0), w.eta, w.order);
    const auto& mid = cfg.middle();
    for (int j = from; j < static_cast<int>(mid.size()); ++j) {
        if (j == skip) continue;
        const MiddleLine& ml = mid[static_cast<std::size_t>(j)];
        if (ml.mult == 0) continue;
        const Jet f = w.t - Jet::constant(ml.eta, w.eta, w.order);
        acc = acc * f.pow(ml.mult);
    }
    return acc;
}

inline Complex cpow(Complex base, int e) {
    Complex acc(1.0, 0.0);
    for (int k = 0; k < e; ++k) acc *= base;
    return acc;
}

Complex g_axes_only_impl(const SliceSource& src, int m1, int mn, Complex z1, Complex z2);

// Evaluation of the interpolation functional in its rearranged form, where
// every z-dependent prefactor is a polynomial in (z1, z2) and all removable
// divisions happen in the jet variable about nonzero centers.
inline Complex g_general_impl(const SliceSource& src, const LineConfig& cfg,
                              Complex z1, Complex z2) {
    const int midsum = cfg.middle_multiplicity_sum();
    if (midsum == 0) return g_axes_only_impl(src, cfg.m1(), cfg.mn(), z1, z2);

    const int D = src.degree();
    const int N = cfg.total_multiplicity();
    const int m1 = cfg.m1();
    const int mn = cfg.mn();
    const auto& mid = cfg.middle();
    const int nm = cfg.middle_count();

    std::vector<NodeWork> W;
    std::vector<int> work_of(static_cast<std::size_t>(nm), -1);
    for (int i = 0; i < nm; ++i) {
        if (mid[static_cast<std::size_t>(i)].mult == 0) continue;
        work_of[static_cast<std::size_t>(i)] = static_cast<int>(W.size());
        W.emplace_back(src, cfg, i, z1, z2);
    }

    const Complex z2mn = cpow(z2, mn);
    // prod over all middle lines of (z1 - eta z2)^mult
    Complex all_mid(1.0, 0.0);
    for (const MiddleLine& ml : mid) all_mid *= cpow(z1 - ml.eta * z2, ml.mult);

    Complex result(0.0, 0.0);

    // Block 1: z1-axis groups. For each derivative slot u1 the bracket mixes
    // the degree-raised series against what the axis rows already determine,
    // divided by t^{u1+1} and the other nodes' factors.
    for (int u1 = 0; u1 < m1; ++u1) {
        const int T = u1 + midsum + mn;
        Complex inner(0.0, 0.0);
        for (const NodeWork& w : W) {
            const Jet r0 = group_weight(w, Complex(0.0, 0.0)) * degree_sum(w, T);
            const Jet r1 = row_tail_jet(src, w, u1, T, z2);
            const Jet denom = w.t.pow(u1 + 1) * middle_cofactor_jet(cfg, w, 0, w.index);
            inner += ((r0 - r1) * denom.reciprocal()).coeff(w.order);
        }
        result += cpow(z1, u1) * all_mid * z2mn * inner;
    }

    // Block 2: middle-line groups (p, up). The self node contributes its
    // order-up coefficient, later nodes their top coefficients with the
    // (t - eta_p)^{up+1} factor moved into their denominators.
    for (int pi = 0; pi < nm; ++pi) {
        const MiddleLine& pl = mid[static_cast<std::size_t>(pi)];
        if (pl.mult == 0) continue;
        const NodeWork& wp = W[static_cast<std::size_t>(work_of[static_cast<std::size_t>(pi)])];

        int after = mn; // multiplicities after line p
        for (int j = pi + 1; j < nm; ++j) after += mid[static_cast<std::size_t>(j)].mult;
        Complex after_pref(1.0, 0.0);
        for (int j = pi + 1; j < nm; ++j) {
            after_pref *= cpow(z1 - mid[static_cast<std::size_t>(j)].eta * z2,
                               mid[static_cast<std::size_t>(j)].mult);
        }

        for (int up = 0; up < pl.mult; ++up) {
            const int T = up + after;
            Complex acc(0.0, 0.0);

            {
                const Jet r0 = group_weight(wp, pl.eta) * degree_sum(wp, T);
                const Jet r2 = col_tail_jet(src, wp, mn, T, z1) * pl.eta;
                const Jet denom = middle_cofactor_jet(cfg, wp, pi + 1, -1);
                acc += ((r0 - r2) * denom.reciprocal()).coeff(up);
            }
            for (int qi = pi + 1; qi < nm; ++qi) {
                if (mid[static_cast<std::size_t>(qi)].mult == 0) continue;
                const NodeWork& wq = W[static_cast<std::size_t>(work_of[static_cast<std::size_t>(qi)])];
                const Jet r0 = group_weight(wq, pl.eta) * degree_sum(wq, T);
                const Jet r2 = col_tail_jet(src, wq, mn, T, z1) * pl.eta;
                const Jet shifted = wq.t - Jet::constant(pl.eta, wq.eta, wq.order);
                const Jet denom = shifted.pow(up + 1) * middle_cofactor_jet(cfg, wq, pi + 1, qi);
                acc += ((r0 - r2) * denom.reciprocal()).coeff(wq.order);
            }
            result += cpow(z1 - pl.eta * z2, up) * after_pref * z2mn * acc;
        }
    }

    // Block 3: z2-axis partial sum, read straight off the columns.
    for (int un = 0; un < mn; ++un) {
        const auto col = src.col(un);
        Complex s(0.0, 0.0);
        Complex z1pow(1.0, 0.0);
        for (int k1 = 0; k1 + un <= D; ++k1) {
            s += col[static_cast<std::size_t>(k1)] * z1pow;
            z1pow *= z1;
        }
        result += cpow(z2, un) * s;
    }

    // Block 4: the top-degree correction. Subtracts the part of the raised
    // series at full threshold N that every group above has double-counted.
    for (const NodeWork& w : W) {
        const Jet r0 = degree_sum(w, N) * w.B * w.invt.pow(m1);

        Jet r1 = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
        for (int k1 = 0; k1 < m1; ++k1) {
            const auto row = src.row(k1);
            Complex s(0.0, 0.0);
            const int k2lo = std::max(0, N - k1);
            Complex z2pow = cpow(z2, k1 + k2lo - N + 1);
            for (int k2 = k2lo; k1 + k2 <= D; ++k2) {
                s += row[static_cast<std::size_t>(k2)] * z2pow;
                z2pow *= z2;
            }
            r1 = r1 + s * w.invt.pow(m1 - k1);
        }

        Jet r2 = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
        for (int k2 = 0; k2 < mn; ++k2) {
            const auto col = src.col(k2);
            Complex s(0.0, 0.0);
            const int k1lo = std::max(0, N - k2);
            Complex z1pow = cpow(z1, k1lo + k2 - N + 1);
            for (int k1 = k1lo; k1 + k2 <= D; ++k1) {
                s += col[static_cast<std::size_t>(k1)] * z1pow;
                z1pow *= z1;
            }
            r2 = r2 + s * w.t.pow(N - m1 - 1 - k2);
        }

        const Jet denom = middle_cofactor_jet(cfg, w, 0, w.index);
        const Jet q = (r0 - r1 - r2) * denom.reciprocal();

        Complex contrib(0.0, 0.0);
        for (int s = 0; s < w.mult; ++s) {
            contrib += cpow(z2, w.mult - 1 - s) * cpow(z1 - w.eta * z2, s) * q.coeff(s);
        }
        const Complex pref = cpow(z1, m1) * (all_mid / cpow(z1 - w.eta * z2, w.mult)) * z2mn;
        result -= pref * contrib;
    }

    return result;
}

inline Complex g_axes_only_impl(const SliceSource& src, int m1, int mn,
                                Complex z1, Complex z2) {
    const int D = src.degree();
    Complex result(0.0, 0.0);
    for (int u1 = 0; u1 < m1; ++u1) {
        const auto row = src.row(u1);
        Complex s(0.0, 0.0);
        Complex z2pow(1.0, 0.0);
        for (int k2 = 0; k2 + u1 <= D; ++k2) {
            s += row[static_cast<std::size_t>(k2)] * z2pow;
            z2pow *= z2;
        }
        result += cpow(z1, u1) * s;
    }
    for (int un = 0; un < mn; ++un) {
        const auto col = src.col(un);
        Complex s(0.0, 0.0);
        Complex z1pow(1.0, 0.0);
        for (int k1 = 0; k1 + un <= D; ++k1) {
            s += col[static_cast<std::size_t>(k1)] * z1pow;
            z1pow *= z1;
        }
        result += cpow(z2, un) * s;
    }
    for (int u1 = 0; u1 < m1; ++u1) {
        const auto row = src.row(u1);
        for (int un = 0; un < mn && u1 + un <= D; ++un) {
            result -= row[static_cast<std::size_t>(un)] * cpow(z1, u1) * cpow(z2, un);
        }
    }
    return result;
}

inline void require_in_domain(const LineConfig& cfg, Complex z1, Complex z2,
                              const DomainGuard& guard) {
    if (!in_domain(cfg, z1, z2, guard)) {
        throw std::domain_error("evaluation point outside the guarded domain");
    }
}

} // namespace detail

enum class SeriesVariant { indexed, top };

// Degree-raised series block: about the jet's center, the weighted sum of
// slice polynomials S_l against powers of B(t) = (z2 + |w|^2 z1/t)/(1+|w|^2).
// The indexed variant carries the group weight (1+|w|^2 p_eta/t)/(1+|w|^2)
// and the z2^threshold normalization; the top variant raises every exponent
// by one, trades the weight for z1^{m1} z2^{threshold-1-m1}, and divides by
// t^{m1}.
inline Jet r0_series(const TaylorSeries2& f, Complex z1, Complex z2, const Jet& t,
                     Complex w, Complex p_eta, int threshold, SeriesVariant variant,
                     int m1 = 0) {
    if (threshold < 0) throw std::invalid_argument("r0_series: negative threshold");
    const double mod2 = std::norm(w);
    const Jet invt = t.reciprocal();
    const Jet B = (Jet::constant(z2, t.center(), t.order()) + mod2 * z1 * invt) *
                  Complex(1.0 / (1.0 + mod2), 0.0);
    const auto S = slice_sums(f, t);
    const int D = f.degree();
    Jet acc = Jet::constant(Complex(0.0, 0.0), t.center(), t.order());
    for (int l = D; l >= threshold; --l) acc = acc * B + S[static_cast<std::size_t>(l)];
    if (variant == SeriesVariant::indexed) {
        const Jet weight = (Jet::constant(Complex(1.0, 0.0), t.center(), t.order()) +
                            (mod2 * p_eta) * invt) *
                           Complex(1.0 / (1.0 + mod2), 0.0);
        return weight * acc * detail::cpow(z2, threshold);
    }
    if (threshold - 1 - m1 < 0) {
        throw std::invalid_argument("r0_series: top variant needs threshold > m1");
    }
    return acc * B * invt.pow(m1) *
           (detail::cpow(z1, m1) * detail::cpow(z2, threshold - 1 - m1));
}

// The part of the series pinned by the z1-axis rows above the threshold:
// indexed over k1 <= u (with z2^{k1+k2}), or in the top variant over
// k1 <= m1 - 1 with the degree shift by m1 moved onto t and z2.
inline Jet r1_series(const TaylorSeries2& f, Complex z1, Complex z2, const Jet& t,
                     int u, int threshold, SeriesVariant variant) {
    if (threshold < 0) throw std::invalid_argument("r1_series: negative threshold");
    const int D = f.degree();
    Jet acc = Jet::constant(Complex(0.0, 0.0), t.center(), t.order());
    if (variant == SeriesVariant::indexed) {
        Jet tpow = Jet::constant(Complex(1.0, 0.0), t.center(), t.order());
        for (int k1 = 0; k1 <= u; ++k1) {
            Complex s(0.0, 0.0);
            for (int k2 = std::max(0, threshold - k1); k1 + k2 <= D; ++k2) {
                s += f.at(k1, k2) * detail::cpow(z2, k1 + k2);
            }
            acc = acc + s * tpow;
            tpow = tpow * t;
        }
        return acc;
    }
    const int m1 = u;
    const Jet invt = t.reciprocal();
    for (int k1 = 0; k1 < m1; ++k1) {
        Complex s(0.0, 0.0);
        for (int k2 = std::max(0, threshold - k1); k1 + k2 <= D; ++k2) {
            s += f.at(k1, k2) * detail::cpow(z2, k1 + k2 - m1);
        }
        acc = acc + s * invt.pow(m1 - k1);
    }
    return acc * detail::cpow(z1, m1);
}

// The part pinned by the z2-axis columns: indexed with the group slope p_eta
// and z2^threshold, or the top variant with the z1^{m1} z2^{threshold-1-m1}
// normalization and exponents raised by one.
inline Jet r2_series(const TaylorSeries2& f, Complex z1, Complex z2, const Jet& t,
                     Complex p_eta, int mn, int threshold, SeriesVariant variant,
                     int m1 = 0) {
    if (threshold < 0) throw std::invalid_argument("r2_series: negative threshold");
    const int D = f.degree();
    Jet acc = Jet::constant(Complex(0.0, 0.0), t.center(), t.order());
    if (variant == SeriesVariant::indexed) {
        for (int k2 = 0; k2 < mn; ++k2) {
            if (threshold - 1 - k2 < 0) {
                throw std::invalid_argument("r2_series: threshold below axis multiplicity");
            }
            Complex s(0.0, 0.0);
            for (int k1 = std::max(0, threshold - k2); k1 + k2 <= D; ++k1) {
                s += f.at(k1, k2) * detail::cpow(z1, k1 + k2 - threshold);
            }
            acc = acc + s * t.pow(threshold - 1 - k2);
        }
        return acc * (p_eta * detail::cpow(z2, threshold));
    }
    for (int k2 = 0; k2 < mn; ++k2) {
        if (threshold - m1 - 1 - k2 < 0) {
            throw std::invalid_argument("r2_series: top variant threshold too small");
        }
        Complex s(0.0, 0.0);
        for (int k1 = std::max(0, threshold - k2); k1 + k2 <= D; ++k1) {
            s += f.at(k1, k2) * detail::cpow(z1, k1 + k2 - threshold + 1);
        }
        acc = acc + s * t.pow(threshold - m1 - 1 - k2);
    }
    return acc * (detail::cpow(z1, m1) * detail::cpow(z2, threshold - 1 - m1));
}

// Reconstruction from full coefficients. The result depends on f only
// through its values on the configured lines; fed the matching LineData it
// reproduces the same value to rounding.
inline Complex g_general(const TaylorSeries2& f, const LineConfig& cfg,
                         Complex z1, Complex z2, const DomainGuard& guard = {}) {
    detail::require_in_domain(cfg, z1, z2, guard);
    detail::CoeffSource src(f, cfg);
    return detail::g_general_impl(src, cfg, z1, z2);
}

// Reconstruction from measured line data alone.
inline Complex g_general(const LineData& d, const LineConfig& cfg,
                         Complex z1, Complex z2, const DomainGuard& guard = {}) {
    detail::require_data_matches(d, cfg);
    detail::require_in_domain(cfg, z1, z2, guard);
    detail::DataSource src(d);
    return detail::g_general_impl(src, cfg, z1, z2);
}

// Axis-only special case: partial Taylor sums in each variable minus their
// overlap. Polynomial in z, needs no middle lines.
inline Complex g_axes_only(const TaylorSeries2& f, int m1, int mn,
                           Complex z1, Complex z2, const DomainGuard& guard = {}) {
    if (m1 < 0 || mn < 0) throw std::invalid_argument("g_axes_only: negative multiplicity");
    const LineConfig cfg(m1, {}, mn);
    detail::require_in_domain(cfg, z1, z2, guard);
    detail::CoeffSource src(f, cfg);
    return detail::g_axes_only_impl(src, m1, mn, z1, z2);
}

inline Complex g_axes_only(const LineData& d, int m1, int mn,
                           Complex z1, Complex z2, const DomainGuard& guard = {}) {
    if (m1 < 0 || mn < 0) throw std::invalid_argument("g_axes_only: negative multiplicity");
    if (m1 > static_cast<int>(d.rows.size()) || mn > static_cast<int>(d.cols.size())) {
        throw std::invalid_argument("g_axes_only: data holds fewer axis orders than requested");
    }
    const LineConfig cfg(m1, {}, mn);
    detail::require_in_domain(cfg, z1, z2, guard);
    detail::DataSource src(d);
    return detail::g_axes_only_impl(src, m1, mn, z1, z2);
}

namespace detail {

inline bool in_domain_lines_only(const std::vector<MiddleLine>& mid, Complex z1, Complex z2,
                                 const DomainGuard& guard) {
    const double norm = std::sqrt(std::norm(z1) + std::norm(z2));
    if (!(norm < 1.0)) return false;
    const double margin = guard.delta * (1.0 + norm);
    for (const MiddleLine& ml : mid) {
        if (std::abs(z1 - ml.eta * z2) < margin) return false;
    }
    return true;
}

// Shared core of the simple-line formula; sv[q][l] are the plain line values
// (coefficient of v^l of f(eta_q v, v)) in canonical node order.
inline Complex g_single_lines_impl(const std::vector<Complex>& etas,
                                   const std::vector<std::vector<Complex>>& sv,
                                   Complex z1, Complex z2) {
    const int M = static_cast<int>(etas.size());
    const int D = static_cast<int>(sv.front().size()) - 1;
    std::vector<Complex> btil(static_cast<std::size_t>(M));
    for (int q = 0; q < M; ++q) {
        const Complex eq = etas[static_cast<std::size_t>(q)];
        btil[static_cast<std::size_t>(q)] =
            (z2 + std::conj(eq) * z1) / (1.0 + std::norm(eq));
    }

    Complex total(0.0, 0.0);
    // Nested-group part: for block p only the nodes from p onward appear,
    // with threshold M - 1 - p.
    for (int p = 0; p < M; ++p) {
        Complex pref(1.0, 0.0);
        for (int j = p + 1; j < M; ++j) {
            pref *= z1 - etas[static_cast<std::size_t>(j)] * z2;
        }
        const int T = M - 1 - p;
        Complex inner(0.0, 0.0);
        for (int q = p; q < M; ++q) {
            const Complex eq = etas[static_cast<std::size_t>(q)];
            Complex den(1.0, 0.0);
            for (int j = p; j < M; ++j) {
                if (j == q) continue;
                den *= eq - etas[static_cast<std::size_t>(j)];
            }
            Complex ser(0.0, 0.0);
            for (int l = D; l >= T; --l) {
                ser = ser * btil[static_cast<std::size_t>(q)] +
                      sv[static_cast<std::size_t>(q)][static_cast<std::size_t>(l)];
            }
            const Complex weight = (1.0 + etas[static_cast<std::size_t>(p)] * std::conj(eq)) /
                                   (1.0 + std::norm(eq));
            inner += weight * ser / den;
        }
        total += pref * inner;
    }
    // Top-degree correction with classical interpolation weights.
    for (int p = 0; p < M; ++p) {
        const Complex ep = etas[static_cast<std::size_t>(p)];
        Complex lag(1.0, 0.0);
        for (int j = 0; j < M; ++j) {
            if (j == p) continue;
            lag *= (z1 - etas[static_cast<std::size_t>(j)] * z2) /
                   (ep - etas[static_cast<std::size_t>(j)]);
        }
        Complex ser(0.0, 0.0);
        for (int l = D; l >= M; --l) {
            ser = ser * btil[static_cast<std::size_t>(p)] +
                  sv[static_cast<std::size_t>(p)][static_cast<std::size_t>(l)];
        }
        ser = ser * btil[static_cast<std::size_t>(p)];
        total -= lag * ser;
    }
    return total;
}

} // namespace detail

// Reconstruction when every line is simple (no axis planes, multiplicity one
// each): consumes only the plain restrictions of f to the lines. Points only
// need to clear the lines themselves; the z2 = 0 plane is allowed because
// this arrangement is polynomial in z.
inline Complex g_single_lines(const TaylorSeries2& f, const std::vector<Complex>& etas,
                              Complex z1, Complex z2, const DomainGuard& guard = {}) {
    if (etas.empty()) throw std::invalid_argument("g_single_lines: no lines");
    std::vector<MiddleLine> mid;
    for (Complex e : etas) mid.push_back({e, 1});
    const LineConfig cfg(0, mid, 0); // canonical order + distinctness checks
    if (!detail::in_domain_lines_only(cfg.middle(), z1, z2, guard)) {
        throw std::domain_error("evaluation point outside the guarded domain");
    }
    std::vector<Complex> sorted;
    std::vector<std::vector<Complex>> sv;
    for (const MiddleLine& ml : cfg.middle()) {
        sorted.push_back(ml.eta);
        sv.push_back(line_restriction_jets(f, ml.eta, 0));
    }
    return detail::g_single_lines_impl(sorted, sv, z1, z2);
}

inline Complex g_single_lines(const LineData& d, Complex z1, Complex z2,
                              const DomainGuard& guard = {}) {
    if (d.m1 != 0 || d.mn != 0) {
        throw std::invalid_argument("g_single_lines: data carries axis multiplicities");
    }
    if (d.middle_etas.empty()) throw std::invalid_argument("g_single_lines: no lines");
    std::vector<MiddleLine> mid;
    for (std::size_t i = 0; i < d.middle_etas.size(); ++i) {
        if (d.middle_mults[i] != 1) {
            throw std::invalid_argument("g_single_lines: data has a non-simple line");
        }
        mid.push_back({d.middle_etas[i], 1});
    }
    const LineConfig cfg(0, mid, 0);
    if (!detail::in_domain_lines_only(cfg.middle(), z1, z2, guard)) {
        throw std::domain_error("evaluation point outside the guarded domain");
    }
    std::vector<Complex> sorted;
    std::vector<std::vector<Complex>> sv;
    for (const MiddleLine& ml : cfg.middle()) {
        // locate the stored line (data order may differ from canonical order)
        bool found = false;
        for (std::size_t i = 0; i < d.middle_etas.size(); ++i) {
            if (d.middle_etas[i] == ml.eta) {
                sorted.push_back(ml.eta);
                sv.push_back(d.middle[i][0]);
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("g_single_lines: line lookup failed");
    }
    return detail::g_single_lines_impl(sorted, sv, z1, z2);
}

// The coefficients beyond every line's reach: total degree at least the full
// multiplicity count, k1 at least m1 and k2 at least mn. Summed in ascending
// total degree.
inline Complex tail_sum(const TaylorSeries2& f, const LineConfig& cfg,
                        Complex z1, Complex z2) {
    const int D = f.degree();
    const int N = cfg.total_multiplicity();
    Complex acc(0.0, 0.0);
    for (int l = N; l <= D; ++l) {
        Complex row(0.0, 0.0);
        for (int k1 = cfg.m1(); k1 <= l - cfg.mn(); ++k1) {
            row += f.at(k1, l - k1) * detail::cpow(z1, k1) * detail::cpow(z2, l - k1);
        }
        acc += row;
    }
    return acc;
}

// Value at z of the residual functional applied to the single monomial
// z1^{k1} z2^{k2}: the monomial itself when it lies beyond every line's
// reach, corrected by per-node jet terms at full threshold N.
inline Complex pv_remainder_monomial(const LineConfig& cfg, int k1, int k2,
                                     Complex z1, Complex z2, const DomainGuard& guard = {}) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("pv_remainder_monomial: negative exponent");
    if (cfg.middle_multiplicity_sum() == 0) {
        throw std::invalid_argument("pv_remainder_monomial: needs a middle line");
    }
    detail::require_in_domain(cfg, z1, z2, guard);

    const int N = cfg.total_multiplicity();
    const int m1 = cfg.m1();
    const int mn = cfg.mn();
    const auto& mid = cfg.middle();
    const int nm = cfg.middle_count();

    Complex all_mid(1.0, 0.0);
    for (const MiddleLine& ml : mid) all_mid *= detail::cpow(z1 - ml.eta * z2, ml.mult);
    const Complex z2mn = detail::cpow(z2, mn);

    Complex result(0.0, 0.0);
    if (k1 + k2 >= N && k1 >= m1 && k2 >= mn) {
        result += detail::cpow(z1, k1) * detail::cpow(z2, k2);
    }

    const bool want_b = k1 + k2 >= N;
    const bool want_c = k1 <= m1 - 1 && k2 >= N - k1;
    const bool want_d = k2 <= mn - 1 && k1 >= N - k2;
    if (!want_b && !want_c && !want_d) return result;

    for (int pi = 0; pi < nm; ++pi) {
        const MiddleLine& pl = mid[static_cast<std::size_t>(pi)];
        if (pl.mult == 0) continue;
        const int order = pl.mult - 1;
        const Jet t = Jet::identity(pl.eta, order);
        const Jet invt = t.reciprocal();
        const double mod2 = std::norm(pl.eta);
        const Jet B = (Jet::constant(z2, pl.eta, order) + mod2 * z1 * invt) *
                      Complex(1.0 / (1.0 + mod2), 0.0);

        // 1 / (t^{m1} prod_{j != p} (t - eta_j)^{m_j}) about eta_p.
        Jet den = invt.pow(m1);
        for (int j = 0; j < nm; ++j) {
            if (j == pi) continue;
            const MiddleLine& ml = mid[static_cast<std::size_t>(j)];
            if (ml.mult == 0) continue;
            den = den * (t - Jet::constant(ml.eta, pl.eta, order)).pow(ml.mult).reciprocal();
        }

        const Complex pref = detail::cpow(z1, m1) *
                             (all_mid / detail::cpow(z1 - pl.eta * z2, pl.mult)) * z2mn;

        auto fold = [&](const Jet& j) {
            Complex c(0.0, 0.0);
            for (int s = 0; s <= order; ++s) {
                c += detail::cpow(z2, order - s) * detail::cpow(z1 - pl.eta * z2, s) * j.coeff(s);
            }
            return pref * c;
        };

        if (want_b) result -= fold(t.pow(k1) * B.pow(k1 + k2 - N + 1) * den);
        if (want_c) result += fold(t.pow(k1) * den) * detail::cpow(z2, k1 + k2 - N + 1);
        if (want_d) result += fold(t.pow(N - 1 - k2) * den) * detail::cpow(z1, k1 + k2 - N + 1);
    }
    return result;
}

// Value at z of the interpolation functional applied to the single monomial
// z1^{k1} z2^{k2}. Together with pv_remainder_monomial it adds back to the
// monomial itself at every guarded point.
inline Complex interp_part_monomial(const LineConfig& cfg, int k1, int k2,
                                    Complex z1, Complex z2, const DomainGuard& guard = {}) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("interp_part_monomial: negative exponent");
    if (cfg.middle_multiplicity_sum() == 0) {
        throw std::invalid_argument("interp_part_monomial: needs a middle line");
    }
    detail::require_in_domain(cfg, z1, z2, guard);

    const int m1 = cfg.m1();
    const int mn = cfg.mn();
    const int midsum = cfg.middle_multiplicity_sum();
    const auto& mid = cfg.middle();
    const int nm = cfg.middle_count();
    const Complex z2mn = detail::cpow(z2, mn);

    Complex all_mid(1.0, 0.0);
    for (const MiddleLine& ml : mid) all_mid *= detail::cpow(z1 - ml.eta * z2, ml.mult);

    struct NodeJets {
        Complex eta;
        double mod2;
        int mult, order;
        Jet t, invt, B;
    };
    std::vector<NodeJets> nodes;
    for (int i = 0; i < nm; ++i) {
        const MiddleLine& ml = mid[static_cast<std::size_t>(i)];
        if (ml.mult == 0) continue;
        const int order = ml.mult - 1;
        const Jet t = Jet::identity(ml.eta, order);
        const Jet invt = t.reciprocal();
        const double mod2 = std::norm(ml.eta);
        const Jet B = (Jet::constant(z2, ml.eta, order) + mod2 * z1 * invt) *
                      Complex(1.0 / (1.0 + mod2), 0.0);
        nodes.push_back({ml.eta, mod2, ml.mult, order, t, invt, B});
    }

    auto mid_cofactor = [&](const NodeJets& w, int from, Complex skip_eta) {
        Jet acc = Jet::constant(Complex(1.0, 0.0), w.eta, w.order);
        for (int j = from; j < nm; ++j) {
            const MiddleLine& ml = mid[static_cast<std::size_t>(j)];
            if (ml.mult == 0 || ml.eta == skip_eta || ml.eta == w.eta) continue;
            acc = acc * (w.t - Jet::constant(ml.eta, w.eta, w.order)).pow(ml.mult);
        }
        return acc;
    };

    Complex result(0.0, 0.0);

    // Block 1: z1-axis groups.
    for (int u1 = 0; u1 < m1; ++u1) {
        const int T = u1 + midsum + mn;
        Complex inner(0.0, 0.0);
        for (const NodeJets& w : nodes) {
            Jet bracket = Jet::constant(Complex(0.0, 0.0), w.eta, w.order);
            if (k1 + k2 >= T) {
                bracket = bracket + w.t.pow(k1) * w.B.pow(k1 + k2 - T) *
                                        Complex(1.0 / (1.0 + w.mod2), 0.0);
            }
            if (k1 <= u1 && k2 >= T - k1) {
                bracket = bracket - w.t.pow(k1) * detail::cpow(z2, k1 + k2 - T);
            }
            const Jet den = w.t.pow(u1 + 1) * mid_cofactor(w, 0, w.eta);
            inner += (bracket * den.reciprocal()).coeff(w.order);
        }
        result += detail::cpow(z1, u1) * all_mid * z2mn * inner;
    }

    // Block 2: middle-line groups (p, up).
    for (int pi = 0; pi < nm; ++pi) {
        const MiddleLine& pl = mid[static_cast<std::size_t>(pi)];
        if (pl.mult == 0) continue;
        // locate this node's jet workspace
        const NodeJets* wp = nullptr;
        for (const NodeJets& w : nodes) {
            if (w.eta == pl.eta) wp = &w;
        }
        int after = mn;
        for (int j = pi + 1; j < nm; ++j) after += mid[static_cast<std::size_t>(j)].mult;
        Complex after_pref(1.0, 0.0);
        for (int j = pi + 1; j < nm; ++j) {
            after_pref *= detail::cpow(z1 - mid[static_cast<std::size_t>(j)].eta * z2,
                                       mid[static_cast<std::size_t>(j)].mult);
        }

        for (int up = 0; up < pl.mult; ++up) {
            const int T = up + after;
            Complex acc(0.0, 0.0);

            if (k1 + k2 >= T) {
                const Jet weight =
                    (Jet::constant(Complex(1.0, 0.0), wp->eta, wp->order) +
                     (wp->mod2 * pl.eta) * wp->invt) *
                    Complex(1.0 / (1.0 + wp->mod2), 0.0);
                const Jet den = mid_cofactor(*wp, pi + 1, Complex(0.0, 0.0));
                acc += (weight * wp->t.pow(k1) * wp->B.pow(k1 + k2 - T) * den.reciprocal())
                           .coeff(up);
                for (int qi = pi + 1; qi < nm; ++qi) {
                    const MiddleLine& ql = mid[static_cast<std::size_t>(qi)];
                    if (ql.mult == 0) continue;
                    const NodeJets* wq = nullptr;
                    for (const NodeJets& w : nodes) {
                        if (w.eta == ql.eta) wq = &w;
                    }
                    const Jet wgt =
                        (Jet::constant(Complex(1.0, 0.0), wq->eta, wq->order) +
                         (wq->mod2 * pl.eta) * wq->invt) *
                        Complex(1.0 / (1.0 + wq->mod2), 0.0);
                    const Jet shifted = wq->t - Jet::constant(pl.eta, wq->eta, wq->order);
                    const Jet den_q = shifted.pow(up + 1) * mid_cofactor(*wq, pi + 1, pl.eta);
                    acc += (wgt * wq->t.pow(k1) * wq->B.pow(k1 + k2 - T) * den_q.reciprocal())
                               .coeff(wq->order);
                }
            }
            if (k2 <= mn - 1 && k1 >= T - k2) {
                Complex sub(0.0, 0.0);
                const Jet den = mid_cofactor(*wp, pi + 1, Complex(0.0, 0.0));
                sub += (wp->t.pow(T - 1 - k2) * den.reciprocal()).coeff(up);
                for (int qi = pi + 1; qi < nm; ++qi) {
                    const MiddleLine& ql = mid[static_cast<std::size_t>(qi)];
                    if (ql.mult == 0) continue;
                    const NodeJets* wq = nullptr;
                    for (const NodeJets& w : nodes) {
                        if (w.eta == ql.eta) wq = &w;
                    }
                    const Jet shifted = wq->t - Jet::constant(pl.eta, wq->eta, wq->order);
                    const Jet den_q = shifted.pow(up + 1) * mid_cofactor(*wq, pi + 1, pl.eta);
                    sub += (wq->t.pow(T - 1 - k2) * den_q.reciprocal()).coeff(wq->order);
                }
                acc -= pl.eta * detail::cpow(z1, k1 + k2 - T) * sub;
            }
            result += detail::cpow(z1 - pl.eta * z2, up) * after_pref * z2mn * acc;
        }
    }

    // Block 3: z2-axis reach.
    if (k2 <= mn - 1) result += detail::cpow(z1, k1) * detail::cpow(z2, k2);

    return result;
}

} // namespace holoball
