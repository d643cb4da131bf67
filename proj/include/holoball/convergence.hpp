#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoball/reconstruct.hpp"
#include "holoball/rng.hpp"

namespace holoball {

// Deterministic evaluation grid in the ball of the given radius, guarded
// against every configuration under test.
struct GridSpec {
    double radius = 0.4;
    int count = 200;
    std::uint64_t seed = 1;
};

namespace detail {

// Generalized golden ratio for dimension 4: the real root above one of
// x^5 = x + 1. The fractional parts of its inverse powers drive a Kronecker
// sequence with good equidistribution in the 4-cube.
inline double kronecker_root4() {
    double x = 1.2;
    for (int it = 0; it < 64; ++it) {
        const double fx = std::pow(x, 5) - x - 1.0;
        const double dfx = 5.0 * std::pow(x, 4) - 1.0;
        const double next = x - fx / dfx;
        if (next == x) break;
        x = next;
    }
    return x;
}

} // namespace detail

// Low-discrepancy points of the real 4-cube mapped to C^2, kept when inside
// the closed ball of spec.radius and inside the guarded domain of every
// configuration. Seeded offsets make distinct seeds give distinct grids
// while keeping each grid reproducible byte for byte.
inline std::vector<std::pair<Complex, Complex>> sample_grid(
    const GridSpec& spec, const std::vector<LineConfig>& cfgs,
    const DomainGuard& guard = {}) {
    if (!(spec.radius > 0.0) || !(spec.radius < 1.0)) {
        throw std::invalid_argument("sample_grid: radius must lie in (0, 1)");
    }
    if (spec.count <= 0) throw std::invalid_argument("sample_grid: count must be positive");

    const double phi = detail::kronecker_root4();
    double alpha[4];
    double p = 1.0;
    for (int i = 0; i < 4; ++i) {
        p /= phi;
        alpha[i] = p - std::floor(p);
    }
    SplitMix64 rng(spec.seed);
    double offset[4];
    for (double& o : offset) o = rng.uniform01();

    std::vector<std::pair<Complex, Complex>> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    const long long max_attempts = 10'000'000;
    for (long long n = 1; n <= max_attempts && static_cast<int>(out.size()) < spec.count; ++n) {
        double c[4];
        for (int i = 0; i < 4; ++i) {
            const double u = offset[i] + static_cast<double>(n) * alpha[i];
            const double frac = u - std::floor(u);
            c[i] = spec.radius * (2.0 * frac - 1.0);
        }
        const Complex z1(c[0], c[1]);
        const Complex z2(c[2], c[3]);
        if (std::sqrt(std::norm(z1) + std::norm(z2)) > spec.radius) continue;
        bool ok = true;
        for (const LineConfig& cfg : cfgs) {
            if (!in_domain(cfg, z1, z2, guard)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        out.emplace_back(z1, z2);
    }
    if (static_cast<int>(out.size()) < spec.count) {
        throw std::runtime_error("sample_grid: could not place enough guarded points");
    }
    return out;
}

struct ConvergenceRow {
    int lines = 0;               // number of lines in the configuration
    int total_multiplicity = 0;  // N for that configuration
    double sup_error = 0.0;
    double mean_error = 0.0;
    double ratio = std::numeric_limits<double>::quiet_NaN(); // sup / previous sup
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    // exp of the least-squares slope of ln(sup_error) against N; below one
    // means geometric decay in the multiplicity count.
    double fitted_rate = std::numeric_limits<double>::quiet_NaN();
};

// Reconstruction error of each configuration over one shared grid. The grid
// is guarded against every configuration at once so each row sees the same
// points.
inline ConvergenceReport convergence_experiment(const TaylorSeries2& f,
                                                const std::vector<LineConfig>& cfgs,
                                                const GridSpec& grid,
                                                const DomainGuard& guard = {}) {
    if (cfgs.empty()) throw std::invalid_argument("convergence_experiment: no configurations");
    const auto pts = sample_grid(grid, cfgs, guard);

    ConvergenceReport rep;
    double prev_sup = std::numeric_limits<double>::quiet_NaN();
    for (const LineConfig& cfg : cfgs) {
        ConvergenceRow row;
        row.lines = cfg.middle_count() + (cfg.m1() > 0 ? 1 : 0) + (cfg.mn() > 0 ? 1 : 0);
        row.total_multiplicity = cfg.total_multiplicity();
        double sup = 0.0, sum = 0.0;
        for (const auto& [z1, z2] : pts) {
            const Complex fv = eval2(f, z1, z2);
            const Complex gv = g_general(f, cfg, z1, z2, guard);
            const double e = std::abs(fv - gv);
            sup = std::max(sup, e);
            sum += e;
        }
        row.sup_error = sup;
        row.mean_error = sum / static_cast<double>(pts.size());
        if (!std::isnan(prev_sup) && prev_sup > 0.0) row.ratio = sup / prev_sup;
        prev_sup = sup;
        rep.rows.push_back(row);
    }

    if (rep.rows.size() >= 2) {
        double sx = 0.0, sy = 0.0;
        const double n = static_cast<double>(rep.rows.size());
        std::vector<double> xs, ys;
        for (const ConvergenceRow& r : rep.rows) {
            const double x = static_cast<double>(r.total_multiplicity);
            const double y = std::log(std::max(r.sup_error, 1e-300));
            xs.push_back(x);
            ys.push_back(y);
            sx += x;
            sy += y;
        }
        const double mx = sx / n, my = sy / n;
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            num += (xs[i] - mx) * (ys[i] - my);
            den += (xs[i] - mx) * (xs[i] - mx);
        }
        if (den > 0.0) rep.fitted_rate = std::exp(num / den);
    }
    return rep;
}

} // namespace holoball
