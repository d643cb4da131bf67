#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoball/poly.hpp"

namespace holoball {

struct MiddleLine {
    Complex eta;
    int mult = 0;
};

struct DomainGuard {
    double delta = 1e-6;
};

// A finite family of complex lines through the origin: the plane z1 = 0 with
// multiplicity m1, middle lines z1 = eta z2 with finite nonzero slopes eta,
// and the plane z2 = 0 with multiplicity mn. The two axial planes are the
// slope-0 and slope-infinity ends of the family and are never materialized
// as explicit slopes. Middle lines are kept sorted by (modulus, argument) so
// every evaluation order downstream is deterministic.
class LineConfig {
public:
    LineConfig(int m1, std::vector<MiddleLine> middle, int mn)
        : m1_(m1), middle_(std::move(middle)), mn_(mn) {
        validate();
        std::sort(middle_.begin(), middle_.end(), [](const MiddleLine& a, const MiddleLine& b) {
            const double ma = std::abs(a.eta), mb = std::abs(b.eta);
            if (ma != mb) return ma < mb;
            return std::arg(a.eta) < std::arg(b.eta);
        });
    }

    int m1() const { return m1_; }
    int mn() const { return mn_; }
    const std::vector<MiddleLine>& middle() const { return middle_; }
    int middle_count() const { return static_cast<int>(middle_.size()); }

    // Total line count in the indexing convention line 1 = {z1 = 0},
    // lines 2 .. n-1 = middle, line n = {z2 = 0}.
    int n() const { return middle_count() + 2; }

    int total_multiplicity() const {
        int s = m1_ + mn_;
        for (const MiddleLine& ml : middle_) s += ml.mult;
        return s;
    }

    int middle_multiplicity_sum() const {
        int s = 0;
        for (const MiddleLine& ml : middle_) s += ml.mult;
        return s;
    }

    // Multiplicity of line p in 1-based indexing.
    int mult_of(int p) const {
        if (p == 1) return m1_;
        if (p == n()) return mn_;
        if (p >= 2 && p <= n() - 1) return middle_[static_cast<std::size_t>(p - 2)].mult;
        throw std::invalid_argument("LineConfig::mult_of: line index out of range");
    }

    Complex middle_eta(int p) const {
        if (p < 2 || p > n() - 1) {
            throw std::invalid_argument("LineConfig::middle_eta: not a middle line");
        }
        return middle_[static_cast<std::size_t>(p - 2)].eta;
    }

private:
    void validate() const {
        if (m1_ < 0 || mn_ < 0) throw std::invalid_argument("LineConfig: negative multiplicity");
        double max_mod = 0.0;
        for (const MiddleLine& ml : middle_) {
            if (!is_finite(ml.eta)) throw std::invalid_argument("LineConfig: non-finite slope");
            if (ml.mult < 0) throw std::invalid_argument("LineConfig: negative multiplicity");
            max_mod = std::max(max_mod, std::abs(ml.eta));
        }
        const double tol = 1e-12 * (1.0 + max_mod);
        for (std::size_t i = 0; i < middle_.size(); ++i) {
            if (std::abs(middle_[i].eta) < tol) {
                throw std::invalid_argument("LineConfig: middle slope collides with an axis plane");
            }
            for (std::size_t j = i + 1; j < middle_.size(); ++j) {
                if (std::abs(middle_[i].eta - middle_[j].eta) < tol) {
                    throw std::invalid_argument("LineConfig: coincident middle slopes");
                }
            }
        }
    }

    int m1_;
    std::vector<MiddleLine> middle_;
    int mn_;
};

// Revalidates an already-built configuration. Construction performs the same
// checks; this entry point exists for callers that assemble configs from
// parsed data and want the failure surfaced at a chosen time.
inline void validate_config(const LineConfig& cfg) {
    LineConfig copy(cfg.m1(), cfg.middle(), cfg.mn());
    (void)copy;
}

// Partial multiplicity count u + m_{p+1} + ... + m_n for line p (1-based)
// and derivative slot u in 0 .. m_p - 1. This is the degree threshold that
// separates what the data on lines 1..p determines from what it does not.
inline int capital_n_u(const LineConfig& cfg, int p, int u) {
    if (p < 1 || p > cfg.n()) throw std::invalid_argument("capital_n_u: line index out of range");
    if (u < 0 || u >= cfg.mult_of(p)) {
        throw std::invalid_argument("capital_n_u: derivative slot outside multiplicity");
    }
    int s = u;
    for (int j = p + 1; j <= cfg.n(); ++j) s += cfg.mult_of(j);
    return s;
}

// Distance scale |eta| / sqrt(1 + |eta|^2) of the line z1 = eta z2 from the
// z2 axis direction; 0 for the slope-0 end and 1 for the slope-infinity end.
inline double alpha(Complex eta) {
    const double m = std::abs(eta);
    return m / std::sqrt(1.0 + m * m);
}

inline double alpha(const LineConfig& cfg, int p) {
    if (p == 1) return 0.0;
    if (p == cfg.n()) return 1.0;
    return alpha(cfg.middle_eta(p));
}

// Divisor product z1^{m1} prod_middle (z1 - eta z2)^{mult} z2^{mn}.
inline Complex g_eval(const LineConfig& cfg, Complex z1, Complex z2) {
    Complex acc(1.0, 0.0);
    for (int k = 0; k < cfg.m1(); ++k) acc *= z1;
    for (const MiddleLine& ml : cfg.middle()) {
        const Complex f = z1 - ml.eta * z2;
        for (int k = 0; k < ml.mult; ++k) acc *= f;
    }
    for (int k = 0; k < cfg.mn(); ++k) acc *= z2;
    return acc;
}

namespace detail {
// powers[k] = base^k for k = 0..count-1.
inline std::vector<Complex> power_table(Complex base, int count) {
    std::vector<Complex> p(static_cast<std::size_t>(std::max(count, 0)));
    if (count <= 0) return p;
    p[0] = Complex(1.0, 0.0);
    for (int k = 1; k < count; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * base;
    return p;
}
} // namespace detail

// Division pair for the divisor product: two polynomials P1, P2 with
// g(zeta) - g(z) = P1 * (zeta1 - z1) + P2 * (zeta2 - z2) for all zeta, z.
// Built by telescoping the product one factor at a time, swapping zeta
// variables for z variables left to right; each factor difference expands
// through the identity a^m - b^m = (a - b) sum a^{m-1-u} b^u, and for a
// middle factor a - b = (zeta1 - z1) - eta (zeta2 - z2).
inline std::pair<Complex, Complex> hefer_pn(const LineConfig& cfg,
                                            Complex zeta1, Complex zeta2,
                                            Complex z1, Complex z2) {
    const auto& mid = cfg.middle();
    const int nm = cfg.middle_count();

    // Suffix products of the z-side factors over middle lines i..end, times z2^{mn}.
    std::vector<Complex> zsuffix(static_cast<std::size_t>(nm) + 1);
    Complex z2mn(1.0, 0.0);
    for (int k = 0; k < cfg.mn(); ++k) z2mn *= z2;
    zsuffix[static_cast<std::size_t>(nm)] = z2mn;
    for (int i = nm - 1; i >= 0; --i) {
        const MiddleLine& ml = mid[static_cast<std::size_t>(i)];
        Complex f(1.0, 0.0);
        const Complex base = z1 - ml.eta * z2;
        for (int k = 0; k < ml.mult; ++k) f *= base;
        zsuffix[static_cast<std::size_t>(i)] = f * zsuffix[static_cast<std::size_t>(i + 1)];
    }

    Complex p1(0.0, 0.0), p2(0.0, 0.0);

    // Leading z1^{m1} factor.
    if (cfg.m1() > 0) {
        const auto zp = detail::power_table(zeta1, cfg.m1());
        const auto wp = detail::power_table(z1, cfg.m1());
        for (int u1 = 0; u1 < cfg.m1(); ++u1) {
            p1 += zp[static_cast<std::size_t>(cfg.m1() - 1 - u1)] *
                  wp[static_cast<std::size_t>(u1)] * zsuffix[0];
        }
    }

    // Middle factors, with the zeta-side prefix accumulated left to right.
    Complex zeta_prefix(1.0, 0.0);
    for (int k = 0; k < cfg.m1(); ++k) zeta_prefix *= zeta1;
    for (int i = 0; i < nm; ++i) {
        const MiddleLine& ml = mid[static_cast<std::size_t>(i)];
        const Complex zf = zeta1 - ml.eta * zeta2;
        const Complex wf = z1 - ml.eta * z2;
        const auto zp = detail::power_table(zf, ml.mult + 1);
        const auto wp = detail::power_table(wf, ml.mult + 1);
        for (int up = 0; up < ml.mult; ++up) {
            const Complex term = zeta_prefix *
                                 zp[static_cast<std::size_t>(ml.mult - 1 - up)] *
                                 wp[static_cast<std::size_t>(up)] *
                                 zsuffix[static_cast<std::size_t>(i + 1)];
            p1 += term;
            p2 -= ml.eta * term;
        }
        zeta_prefix *= zp[static_cast<std::size_t>(ml.mult)];
    }

    // Trailing z2^{mn} factor.
    if (cfg.mn() > 0) {
        const auto zp = detail::power_table(zeta2, cfg.mn());
        const auto wp = detail::power_table(z2, cfg.mn());
        for (int un = 0; un < cfg.mn(); ++un) {
            p2 += zeta_prefix * zp[static_cast<std::size_t>(cfg.mn() - 1 - un)] *
                  wp[static_cast<std::size_t>(un)];
        }
    }

    return {p1, p2};
}

// True when z sits strictly inside the unit ball and clears every configured
// line by the guard's relative margin. The z2 = 0 plane is always excluded
// because the reconstruction divides degrees along z1/z2; the z1 = 0 plane
// is excluded only when it carries multiplicity.
inline bool in_domain(const LineConfig& cfg, Complex z1, Complex z2,
                      const DomainGuard& guard = {}) {
    const double norm = std::sqrt(std::norm(z1) + std::norm(z2));
    if (!(norm < 1.0)) return false;
    const double margin = guard.delta * (1.0 + norm);
    if (std::abs(z2) < margin) return false;
    if (cfg.m1() > 0 && std::abs(z1) < margin) return false;
    for (const MiddleLine& ml : cfg.middle()) {
        if (std::abs(z1 - ml.eta * z2) < margin) return false;
    }
    return true;
}

} // namespace holoball
