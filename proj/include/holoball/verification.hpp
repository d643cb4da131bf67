#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "holoball/convergence.hpp"
#include "holoball/disc.hpp"
#include "holoball/nodes.hpp"
#include "holoball/reconstruct.hpp"
#include "holoball/rng.hpp"

namespace holoball::verify {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    double tol = 0.0;
    int trials = 0;
    std::string detail;
};

inline constexpr double kPi = 3.14159265358979323846;

inline Complex random_box(SplitMix64& rng, double scale) {
    return Complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale));
}

// Line configurations drawn from the regime the identity checks exercise:
// up to three middle lines with moduli in [0.3, 1.3] kept well apart,
// multiplicities up to three on every line.
inline LineConfig random_config(SplitMix64& rng, bool require_middle = true) {
    for (int attempt = 0; attempt < 256; ++attempt) {
        const int nm = require_middle ? 1 + static_cast<int>(rng.next() % 3)
                                      : static_cast<int>(rng.next() % 4);
        std::vector<MiddleLine> mid;
        bool placed_all = true;
        for (int i = 0; i < nm; ++i) {
            bool placed = false;
            Complex eta;
            for (int t = 0; t < 128 && !placed; ++t) {
                eta = std::polar(rng.uniform(0.3, 1.3), rng.uniform(0.0, 2.0 * kPi));
                placed = true;
                for (const MiddleLine& ml : mid) {
                    if (std::abs(ml.eta - eta) < 0.25) {
                        placed = false;
                        break;
                    }
                }
            }
            if (!placed) {
                placed_all = false;
                break;
            }
            mid.push_back({eta, static_cast<int>(rng.next() % 4)});
        }
        if (!placed_all) continue;
        if (require_middle) {
            int msum = 0;
            for (const MiddleLine& ml : mid) msum += ml.mult;
            if (msum == 0) {
                mid[static_cast<std::size_t>(rng.next() % mid.size())].mult =
                    1 + static_cast<int>(rng.next() % 3);
            }
        }
        const int m1 = static_cast<int>(rng.next() % 4);
        const int mn = static_cast<int>(rng.next() % 4);
        int total = m1 + mn;
        for (const MiddleLine& ml : mid) total += ml.mult;
        if (total == 0) continue;
        return LineConfig(m1, mid, mn);
    }
    throw std::runtime_error("random_config: could not place lines");
}

inline TaylorSeries2 random_series(SplitMix64& rng, int degree) {
    TaylorSeries2 f(degree);
    for (int l = 0; l <= degree; ++l) {
        for (int k1 = 0; k1 <= l; ++k1) f.set(k1, l - k1, random_box(rng, 1.0));
    }
    return f;
}

inline std::pair<Complex, Complex> random_guarded_point(SplitMix64& rng,
                                                        const LineConfig& cfg,
                                                        double radius,
                                                        const DomainGuard& guard = {}) {
    for (int t = 0; t < 100000; ++t) {
        const Complex z1 = random_box(rng, radius);
        const Complex z2 = random_box(rng, radius);
        if (std::sqrt(std::norm(z1) + std::norm(z2)) > radius) continue;
        if (in_domain(cfg, z1, z2, guard)) return {z1, z2};
    }
    throw std::runtime_error("random_guarded_point: rejection sampling failed");
}

// f equals its reconstruction plus the unreachable tail, for random
// truncated series, configurations, and guarded points.
inline SuiteResult identity_suite(std::uint64_t seed, int trials, double tol) {
    SplitMix64 rng(seed);
    SuiteResult r{"identity", false, 0.0, tol, trials, ""};
    for (int trial = 0; trial < trials; ++trial) {
        const LineConfig cfg = random_config(rng);
        const int degree = 2 + static_cast<int>(rng.next() % 7);
        const TaylorSeries2 f = random_series(rng, degree);
        for (int p = 0; p < 20; ++p) {
            const auto [z1, z2] = random_guarded_point(rng, cfg, 0.8);
            const Complex fv = eval2(f, z1, z2);
            const Complex gv = g_general(f, cfg, z1, z2);
            const Complex tv = tail_sum(f, cfg, z1, z2);
            r.worst = std::max(r.worst, std::abs(fv - gv - tv) / (1.0 + std::abs(fv)));
        }
    }
    r.pass = r.worst <= tol;
    return r;
}

// Per-monomial split: residual plus interpolation parts add back to the
// monomial itself at guarded points.
inline SuiteResult monomial_suite(std::uint64_t seed, int trials, int kmax, double tol) {
    SplitMix64 rng(seed);
    SuiteResult r{"monomial", false, 0.0, tol, trials, ""};
    for (int trial = 0; trial < trials; ++trial) {
        const LineConfig cfg = random_config(rng);
        const int k1 = static_cast<int>(rng.next() % static_cast<std::uint64_t>(kmax + 1));
        const int k2 = static_cast<int>(rng.next() % static_cast<std::uint64_t>(kmax + 1));
        const auto [z1, z2] = random_guarded_point(rng, cfg, 0.8);
        const Complex mono = detail::cpow(z1, k1) * detail::cpow(z2, k2);
        const Complex pv = pv_remainder_monomial(cfg, k1, k2, z1, z2);
        const Complex ip = interp_part_monomial(cfg, k1, k2, z1, z2);
        r.worst = std::max(r.worst, std::abs(pv + ip - mono) / (1.0 + std::abs(mono)));
    }
    r.pass = r.worst <= tol;
    return r;
}

// The full-coefficient path and the measured-line-data path agree, and so do
// the simple-line formula and the general assembly on simple-line setups.
inline SuiteResult path_agreement_suite(std::uint64_t seed, int trials, double tol) {
    SplitMix64 rng(seed);
    SuiteResult r{"path-agreement", false, 0.0, tol, trials, ""};
    double worst_data = 0.0, worst_single = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        {
            const LineConfig cfg = random_config(rng);
            const int degree = 2 + static_cast<int>(rng.next() % 7);
            const TaylorSeries2 f = random_series(rng, degree);
            const LineData data = extract_line_data(f, cfg);
            for (int p = 0; p < 5; ++p) {
                const auto [z1, z2] = random_guarded_point(rng, cfg, 0.8);
                const Complex gc = g_general(f, cfg, z1, z2);
                const Complex gd = g_general(data, cfg, z1, z2);
                worst_data = std::max(worst_data, std::abs(gc - gd) / (1.0 + std::abs(gc)));
            }
        }
        {
            const int count = 2 + static_cast<int>(rng.next() % 5);
            std::vector<MiddleLine> mid;
            for (int i = 0; i < count; ++i) {
                for (int t = 0; t < 128; ++t) {
                    const Complex eta =
                        std::polar(rng.uniform(0.3, 1.3), rng.uniform(0.0, 2.0 * kPi));
                    bool ok = true;
                    for (const MiddleLine& ml : mid) {
                        if (std::abs(ml.eta - eta) < 0.2) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok) {
                        mid.push_back({eta, 1});
                        break;
                    }
                }
            }
            const LineConfig cfg(0, mid, 0);
            std::vector<Complex> etas;
            for (const MiddleLine& ml : mid) etas.push_back(ml.eta);
            const int degree = count + static_cast<int>(rng.next() % 5);
            const TaylorSeries2 f = random_series(rng, degree);
            for (int p = 0; p < 5; ++p) {
                const auto [z1, z2] = random_guarded_point(rng, cfg, 0.8);
                const Complex gg = g_general(f, cfg, z1, z2);
                const Complex gs = g_single_lines(f, etas, z1, z2);
                worst_single = std::max(worst_single, std::abs(gs - gg) / (1.0 + std::abs(gg)));
            }
        }
    }
    r.worst = std::max(worst_data, worst_single);
    r.pass = r.worst <= tol;
    std::ostringstream d;
    d << "data_path=" << worst_data << " single_line=" << worst_single;
    r.detail = d.str();
    return r;
}

namespace detail_verify {

inline std::int64_t brute_multiset_count(int q, int m) {
    if (m == 0) return q == 0 ? 1 : 0;
    if (q == 0) return 1;
    std::int64_t total = 0;
    for (int i = 0; i <= q; ++i) total += brute_multiset_count(q - i, m - 1);
    return total;
}

inline double poly_diff(const Poly& a, const Poly& b) {
    double worst = 0.0;
    const int d = std::max(a.degree(), b.degree());
    for (int k = 0; k <= d; ++k) {
        worst = std::max(worst, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return worst;
}

inline double poly_scale(const Poly& p) {
    double s = 1.0;
    for (int k = 0; k <= p.degree(); ++k) s = std::max(s, std::abs(p.coeff(k)));
    return s;
}

} // namespace detail_verify

// Division-based algebra: exact division identity, closed-form monomial
// quotients, the confluent interpolant as division remainder, its jet
// matching, and the multiset counts against brute-force enumeration.
inline SuiteResult division_suite(std::uint64_t seed, int trials) {
    SplitMix64 rng(seed);
    SuiteResult r{"division", false, 0.0, 1e-9, trials, ""};
    double worst_div = 0.0, worst_quot = 0.0, worst_rem = 0.0, worst_jets = 0.0;

    for (int q = 0; q <= 8; ++q) {
        for (int m = 0; m <= 4; ++m) {
            if (multiset_count(q, m) != detail_verify::brute_multiset_count(q, m)) {
                r.detail = "multiset count mismatch";
                return r;
            }
        }
    }

    for (int trial = 0; trial < trials; ++trial) {
        const int count = 1 + static_cast<int>(rng.next() % 4);
        std::vector<Node> ns;
        for (int i = 0; i < count; ++i) {
            for (int t = 0; t < 128; ++t) {
                Complex eta = random_box(rng, 1.2);
                if (i == 0 && rng.next() % 5 == 0) eta = Complex(0.0, 0.0);
                bool ok = true;
                for (const Node& n : ns) {
                    if (std::abs(n.eta - eta) < 0.25) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    ns.push_back({eta, 1 + static_cast<int>(rng.next() % 3)});
                    break;
                }
            }
        }
        const NodeSet nodes(ns);
        const Poly g = nodes.node_polynomial();

        std::vector<Complex> pc;
        const int pdeg = static_cast<int>(rng.next() % 11);
        for (int k = 0; k <= pdeg; ++k) pc.push_back(random_box(rng, 1.0));
        if (std::abs(pc.back()) < 1e-3) pc.back() += Complex(1.0, 0.0);
        const Poly P(pc);

        const auto dm = poly_divmod(P, g);
        const Poly recomposed = dm.quotient * g + dm.remainder;
        worst_div = std::max(worst_div, detail_verify::poly_diff(recomposed, P) /
                                            detail_verify::poly_scale(P));

        const int k = static_cast<int>(rng.next() % 11);
        const Poly qp = quotient_power(k, nodes);
        const Poly qd = poly_divmod(Poly::monomial(k), g).quotient;
        worst_quot = std::max(worst_quot, detail_verify::poly_diff(qp, qd) /
                                              detail_verify::poly_scale(qd));

        std::vector<Jet> fjets;
        for (const Node& n : nodes.nodes()) {
            fjets.push_back(of_poly_at_center(P, n.eta, n.mult - 1));
        }
        const Poly H = hermite_polynomial(nodes, fjets);
        worst_rem = std::max(worst_rem, detail_verify::poly_diff(H, dm.remainder) /
                                            detail_verify::poly_scale(dm.remainder));

        for (const Node& n : nodes.nodes()) {
            const Jet jh = of_poly_at_center(H, n.eta, n.mult - 1);
            const Jet jp = of_poly_at_center(P, n.eta, n.mult - 1);
            for (int s = 0; s < n.mult; ++s) {
                worst_jets = std::max(worst_jets, std::abs(jh.coeff(s) - jp.coeff(s)) /
                                                      (1.0 + std::abs(jp.coeff(s))));
            }
        }
    }

    r.worst = std::max({worst_div, worst_quot, worst_rem, worst_jets});
    // division and quotient recomposition are well conditioned; the confluent
    // interpolation residuals carry the node-separation conditioning, so they
    // get one order more slack
    r.pass = worst_div <= 1e-10 && worst_quot <= 1e-10 && worst_rem <= 1e-9 &&
             worst_jets <= 1e-9;
    std::ostringstream d;
    d << "division=" << worst_div << " quotient=" << worst_quot << " remainder=" << worst_rem
      << " jets=" << worst_jets << " multiset=exact";
    r.detail = d.str();
    return r;
}

// The pinned decay experiment: a diagonal geometric series against growing
// families of equally spaced unit-modulus simple lines.
inline std::vector<LineConfig> decay_configs(int max_lines = 10) {
    std::vector<LineConfig> cfgs;
    for (int k = 1; k <= max_lines; ++k) {
        std::vector<MiddleLine> mid;
        for (int j = 0; j < k; ++j) {
            mid.push_back({std::polar(1.0, 2.0 * kPi * static_cast<double>(j) /
                                               static_cast<double>(k)),
                           1});
        }
        cfgs.emplace_back(0, mid, 0);
    }
    return cfgs;
}

inline TaylorSeries2 decay_function() {
    return geometric_diag_series(Complex(0.6, 0.0), 40);
}

inline SuiteResult decay_suite(std::uint64_t seed, double ratio_tol) {
    SuiteResult r{"decay", false, 0.0, ratio_tol, 0, ""};
    const TaylorSeries2 f = decay_function();
    const std::vector<LineConfig> cfgs = decay_configs();
    GridSpec grid;
    grid.seed = seed;
    const ConvergenceReport rep = convergence_experiment(f, cfgs, grid);

    bool decreasing = true;
    std::vector<double> ratios;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (!(rep.rows[i].sup_error < rep.rows[i - 1].sup_error)) decreasing = false;
        ratios.push_back(rep.rows[i].ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    const double median = ratios.empty()
                              ? std::numeric_limits<double>::quiet_NaN()
                              : ratios[ratios.size() / 2];
    r.worst = median;
    r.trials = static_cast<int>(rep.rows.size());
    r.pass = decreasing && median <= ratio_tol && rep.fitted_rate < 1.0;
    std::ostringstream d;
    d << "decreasing=" << (decreasing ? "yes" : "no") << " median_ratio=" << median
      << " fitted_rate=" << rep.fitted_rate << " first_sup=" << rep.rows.front().sup_error
      << " last_sup=" << rep.rows.back().sup_error;
    r.detail = d.str();
    return r;
}

// Monomials the lines determine are reproduced exactly; monomials beyond
// every line's reach map to zero; and the assembly is linear.
inline SuiteResult exact_region_suite(std::uint64_t seed, double tol_exact, double tol_linear) {
    SplitMix64 rng(seed);
    SuiteResult r{"exact-region", false, 0.0, tol_linear, 3, ""};
    double worst_repr = 0.0, worst_lin = 0.0;
    const int cap = 6;
    for (int c = 0; c < 3; ++c) {
        const LineConfig cfg = random_config(rng);
        const int N = cfg.total_multiplicity();
        std::vector<std::pair<Complex, Complex>> pts;
        for (int p = 0; p < 5; ++p) pts.push_back(random_guarded_point(rng, cfg, 0.8));

        std::vector<TaylorSeries2> monos;
        std::vector<std::pair<int, int>> exps;
        for (int l = 0; l <= cap; ++l) {
            for (int k1 = 0; k1 <= l; ++k1) {
                exps.emplace_back(k1, l - k1);
                monos.push_back(TaylorSeries2::monomial(k1, l - k1, cap));
            }
        }
        for (std::size_t i = 0; i < monos.size(); ++i) {
            const auto [k1, k2] = exps[i];
            const bool in_tail = k1 + k2 >= N && k1 >= cfg.m1() && k2 >= cfg.mn();
            for (const auto& [z1, z2] : pts) {
                const Complex gv = g_general(monos[i], cfg, z1, z2);
                const Complex mono = detail::cpow(z1, k1) * detail::cpow(z2, k2);
                const double err = in_tail ? std::abs(gv) / (1.0 + std::abs(mono))
                                           : std::abs(gv - mono) / (1.0 + std::abs(mono));
                worst_repr = std::max(worst_repr, err);
            }
        }

        TaylorSeries2 combo(cap);
        std::vector<std::size_t> picks;
        std::vector<Complex> weights;
        for (int i = 0; i < 3; ++i) {
            picks.push_back(static_cast<std::size_t>(rng.next() % monos.size()));
            weights.push_back(random_box(rng, 1.0));
            const auto [k1, k2] = exps[picks.back()];
            combo.add_at(k1, k2, weights.back());
        }
        for (const auto& [z1, z2] : pts) {
            Complex expect(0.0, 0.0);
            for (int i = 0; i < 3; ++i) {
                expect += weights[static_cast<std::size_t>(i)] *
                          g_general(monos[picks[static_cast<std::size_t>(i)]], cfg, z1, z2);
            }
            const Complex got = g_general(combo, cfg, z1, z2);
            worst_lin = std::max(worst_lin, std::abs(got - expect) / (1.0 + std::abs(got)));
        }
    }
    r.worst = std::max(worst_repr, worst_lin);
    r.pass = worst_repr <= tol_exact && worst_lin <= tol_linear;
    std::ostringstream d;
    d << "reproduction=" << worst_repr << " linearity=" << worst_lin;
    r.detail = d.str();
    return r;
}

// Two-point decomposition of g(zeta) - g(z) with polynomial cofactors.
inline SuiteResult hefer_suite(std::uint64_t seed, int trials, double tol) {
    SplitMix64 rng(seed);
    SuiteResult r{"hefer", false, 0.0, tol, trials, ""};
    for (int trial = 0; trial < trials; ++trial) {
        const LineConfig cfg = random_config(rng, false);
        Complex zeta1, zeta2, z1, z2;
        for (int t = 0; t < 1000; ++t) {
            zeta1 = random_box(rng, 0.9);
            zeta2 = random_box(rng, 0.9);
            if (std::sqrt(std::norm(zeta1) + std::norm(zeta2)) <= 0.9) break;
        }
        for (int t = 0; t < 1000; ++t) {
            z1 = random_box(rng, 0.9);
            z2 = random_box(rng, 0.9);
            if (std::sqrt(std::norm(z1) + std::norm(z2)) <= 0.9) break;
        }
        const Complex gz = g_eval(cfg, zeta1, zeta2);
        const Complex gw = g_eval(cfg, z1, z2);
        const auto [p1, p2] = hefer_pn(cfg, zeta1, zeta2, z1, z2);
        const Complex lhs = gz - gw;
        const Complex rhs = p1 * (zeta1 - z1) + p2 * (zeta2 - z2);
        r.worst = std::max(r.worst,
                           std::abs(lhs - rhs) / (1.0 + std::abs(gz) + std::abs(gw)));
    }
    r.pass = r.worst <= tol;
    return r;
}

// One-variable disc analogue: node reproduction, the contour-quadrature
// identity, and geometric decay of the interpolation defect.
inline SuiteResult disc_suite(std::uint64_t seed, double tol_nodes, double tol_identity) {
    SplitMix64 rng(seed);
    SuiteResult r{"disc", false, 0.0, tol_identity, 20, ""};
    double worst_nodes = 0.0, worst_ident = 0.0;

    for (int trial = 0; trial < 20; ++trial) {
        const int count = 2 + static_cast<int>(rng.next() % 4);
        std::vector<Complex> nodes;
        for (int i = 0; i < count; ++i) {
            for (int t = 0; t < 128; ++t) {
                const Complex eta =
                    std::polar(rng.uniform(0.0, 0.7), rng.uniform(0.0, 2.0 * kPi));
                bool ok = true;
                for (Complex n : nodes) {
                    if (std::abs(n - eta) < 0.05) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    nodes.push_back(eta);
                    break;
                }
            }
        }

        std::vector<Complex> pc;
        for (int k = 0; k <= 6; ++k) pc.push_back(random_box(rng, 1.0));
        const Poly f(pc);
        auto fe = [&f](Complex z) { return f.eval(z); };

        std::vector<Complex> values;
        for (Complex n : nodes) values.push_back(fe(n));
        for (std::size_t l = 0; l < nodes.size(); ++l) {
            const Complex iv = disc_interpolant(nodes, values, nodes[l]);
            worst_nodes = std::max(worst_nodes,
                                   std::abs(iv - values[l]) / (1.0 + std::abs(values[l])));
        }

        const Complex z = std::polar(rng.uniform(0.0, 0.7), rng.uniform(0.0, 2.0 * kPi));
        const Complex iv = disc_interpolant(nodes, values, z);
        const Complex dv = disc_defect(fe, nodes, z);
        worst_ident = std::max(worst_ident,
                               std::abs(fe(z) - iv - dv) / (1.0 + std::abs(fe(z))));
    }

    // defect decay against growing node sets at a fixed point
    std::vector<Complex> pool;
    for (int j = 0; j < 8; ++j) {
        pool.push_back(std::polar(0.55, 2.0 * kPi * 0.61803398874989485 *
                                            static_cast<double>(j + 1)));
    }
    std::vector<Complex> pc;
    for (int k = 0; k <= 20; ++k) pc.push_back(Complex(std::pow(0.8, k), 0.0));
    const Poly f(pc);
    const Complex z(0.31, 0.17);
    std::vector<double> xs, ys;
    double max_phi = 0.0;
    for (int k = 1; k <= 8; ++k) {
        const std::vector<Complex> nodes(pool.begin(), pool.begin() + k);
        std::vector<Complex> values;
        for (Complex n : nodes) values.push_back(f.eval(n));
        const double defect = std::abs(f.eval(z) - disc_interpolant(nodes, values, z));
        xs.push_back(static_cast<double>(k));
        ys.push_back(std::log(std::max(defect, 1e-300)));
        max_phi = std::max(max_phi, std::abs(blaschke_eval(pool[static_cast<std::size_t>(k - 1)], z)));
    }
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(xs.size());
    const double my = sy / static_cast<double>(ys.size());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    const double rate = std::exp(num / den);
    const double bound = max_phi + 0.05;

    r.worst = std::max(worst_nodes, worst_ident);
    r.pass = worst_nodes <= tol_nodes && worst_ident <= tol_identity && rate <= bound;
    std::ostringstream d;
    d << "nodes=" << worst_nodes << " identity=" << worst_ident << " decay_rate=" << rate
      << " rate_bound=" << bound;
    r.detail = d.str();
    return r;
}

} // namespace holoball::verify
