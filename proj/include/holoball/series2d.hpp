#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "holoball/jet.hpp"
#include "holoball/poly.hpp"

namespace holoball {

// binomial(n, k) as a double. Exact for every value that fits in 53 bits,
// which covers all degrees this library admits.
inline double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(acc);
}

// Truncated Taylor expansion about the origin of a function of two complex
// variables: all coefficients a_{k1,k2} with k1 + k2 <= degree, stored
// densely by total degree (row l holds k1 = 0..l). The truncation degree is
// fixed at construction; operations never grow it silently.
class TaylorSeries2 {
public:
    explicit TaylorSeries2(int degree)
        : degree_(check_degree(degree)),
          a_(tri_size(degree), Complex(0.0, 0.0)) {}

    static TaylorSeries2 monomial(int k1, int k2, int degree) {
        if (k1 < 0 || k2 < 0) throw std::invalid_argument("TaylorSeries2: negative exponent");
        if (k1 + k2 > degree) throw std::invalid_argument("TaylorSeries2: exponent past degree");
        TaylorSeries2 f(degree);
        f.set(k1, k2, Complex(1.0, 0.0));
        return f;
    }

    int degree() const { return degree_; }

    Complex at(int k1, int k2) const {
        if (k1 < 0 || k2 < 0 || k1 + k2 > degree_) return Complex(0.0, 0.0);
        return a_[index(k1, k2)];
    }

    void set(int k1, int k2, Complex v) {
        if (k1 < 0 || k2 < 0 || k1 + k2 > degree_) {
            throw std::invalid_argument("TaylorSeries2::set: index outside triangle");
        }
        if (!is_finite(v)) throw std::invalid_argument("TaylorSeries2::set: non-finite value");
        a_[index(k1, k2)] = v;
    }

    void add_at(int k1, int k2, Complex v) { set(k1, k2, at(k1, k2) + v); }

    friend TaylorSeries2 operator+(const TaylorSeries2& f, const TaylorSeries2& g) {
        if (f.degree_ != g.degree_) {
            throw std::invalid_argument("TaylorSeries2: degree mismatch in sum");
        }
        TaylorSeries2 r = f;
        for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += g.a_[i];
        return r;
    }

    friend TaylorSeries2 operator*(const TaylorSeries2& f, Complex s) {
        TaylorSeries2 r = f;
        for (Complex& v : r.a_) v *= s;
        return r;
    }

    friend TaylorSeries2 operator*(Complex s, const TaylorSeries2& f) { return f * s; }

    // Truncated product at the common degree.
    friend TaylorSeries2 operator*(const TaylorSeries2& f, const TaylorSeries2& g) {
        if (f.degree_ != g.degree_) {
            throw std::invalid_argument("TaylorSeries2: degree mismatch in product");
        }
        TaylorSeries2 r(f.degree_);
        for (int l = 0; l <= f.degree_; ++l) {
            for (int i = 0; i <= l; ++i) {
                const Complex fv = f.at(i, l - i);
                if (fv == Complex(0.0, 0.0)) continue;
                for (int m = 0; m + l <= f.degree_; ++m) {
                    for (int j = 0; j <= m; ++j) {
                        const Complex gv = g.at(j, m - j);
                        if (gv == Complex(0.0, 0.0)) continue;
                        r.add_at(i + j, l - i + m - j, fv * gv);
                    }
                }
            }
        }
        return r;
    }

private:
    static int check_degree(int degree) {
        if (degree < 0) throw std::invalid_argument("TaylorSeries2: negative degree");
        return degree;
    }

    static std::size_t tri_size(int degree) {
        return static_cast<std::size_t>(degree + 1) * static_cast<std::size_t>(degree + 2) / 2;
    }

    std::size_t index(int k1, int k2) const {
        const int l = k1 + k2;
        return static_cast<std::size_t>(l) * static_cast<std::size_t>(l + 1) / 2 +
               static_cast<std::size_t>(k1);
    }

    int degree_;
    std::vector<Complex> a_; // coefficient a_{k1,k2} at tri(l) + k1, l = k1 + k2
};

// Assemble a truncated series from an explicit coefficient list. Duplicate
// indices are rejected rather than summed so a malformed input cannot pass
// as a different function.
inline TaylorSeries2 build_series(int degree,
                                  const std::vector<std::tuple<int, int, Complex>>& coeffs) {
    TaylorSeries2 f(degree);
    std::vector<std::pair<int, int>> seen;
    for (const auto& [k1, k2, v] : coeffs) {
        if (k1 < 0 || k2 < 0 || k1 + k2 > degree) {
            throw std::invalid_argument("build_series: index outside triangle");
        }
        for (const auto& s : seen) {
            if (s.first == k1 && s.second == k2) {
                throw std::invalid_argument("build_series: duplicate coefficient index");
            }
        }
        seen.emplace_back(k1, k2);
        f.set(k1, k2, v);
    }
    return f;
}

// Truncation of 1/((1 - c1 z1)(1 - c2 z2)): coefficients c1^{k1} c2^{k2}.
// Requires |c1| < 1 and |c2| < 1 so both singular hyperplanes miss the
// closed unit ball.
inline TaylorSeries2 geometric_product_series(Complex c1, Complex c2, int degree) {
    if (!is_finite(c1) || !is_finite(c2)) {
        throw std::invalid_argument("geometric_product_series: non-finite parameter");
    }
    if (std::abs(c1) >= 1.0 || std::abs(c2) >= 1.0) {
        throw std::invalid_argument("geometric_product_series: singularity meets the closed ball");
    }
    TaylorSeries2 f(degree);
    Complex p1(1.0, 0.0);
    for (int k1 = 0; k1 <= degree; ++k1) {
        Complex p2(1.0, 0.0);
        for (int k2 = 0; k1 + k2 <= degree; ++k2) {
            f.set(k1, k2, p1 * p2);
            p2 *= c2;
        }
        p1 *= c1;
    }
    return f;
}

// Truncation of 1/(1 - c (z1 + z2)): coefficients c^{k1+k2} binomial(k1+k2, k1).
// Requires sqrt(2) |c| < 1, the condition for the singular plane to miss the
// closed unit ball.
inline TaylorSeries2 geometric_diag_series(Complex c, int degree) {
    if (!is_finite(c)) throw std::invalid_argument("geometric_diag_series: non-finite parameter");
    if (std::sqrt(2.0) * std::abs(c) >= 1.0) {
        throw std::invalid_argument("geometric_diag_series: singularity meets the closed ball");
    }
    TaylorSeries2 f(degree);
    Complex cp(1.0, 0.0);
    for (int l = 0; l <= degree; ++l) {
        for (int k1 = 0; k1 <= l; ++k1) f.set(k1, l - k1, cp * binom(l, k1));
        cp *= c;
    }
    return f;
}

// Value of the truncated series at z. Terms are summed in ascending total
// degree with a fixed inner order, so the rounding pattern is reproducible.
inline Complex eval2(const TaylorSeries2& f, Complex z1, Complex z2) {
    const int d = f.degree();
    std::vector<Complex> p1(static_cast<std::size_t>(d) + 1), p2(p1.size());
    p1[0] = p2[0] = Complex(1.0, 0.0);
    for (int k = 1; k <= d; ++k) {
        p1[static_cast<std::size_t>(k)] = p1[static_cast<std::size_t>(k - 1)] * z1;
        p2[static_cast<std::size_t>(k)] = p2[static_cast<std::size_t>(k - 1)] * z2;
    }
    Complex acc(0.0, 0.0);
    for (int l = 0; l <= d; ++l) {
        Complex row(0.0, 0.0);
        for (int k1 = 0; k1 <= l; ++k1) {
            row += f.at(k1, l - k1) * p1[static_cast<std::size_t>(k1)] *
                   p2[static_cast<std::size_t>(l - k1)];
        }
        acc += row;
    }
    return acc;
}

// For each total degree l, the single-variable polynomial
// sum_{k1+k2=l} a_{k1,k2} t^{k1} evaluated on the jet t. Entry l of the
// result collects everything the series contributes in degree l along the
// family of lines z1 = t z2.
inline std::vector<Jet> slice_sums(const TaylorSeries2& f, const Jet& t) {
    const int d = f.degree();
    std::vector<Jet> out;
    out.reserve(static_cast<std::size_t>(d) + 1);
    for (int l = 0; l <= d; ++l) {
        // Horner in t over k1 = l .. 0.
        Jet acc = Jet::constant(f.at(l, 0), t.center(), t.order());
        for (int k1 = l - 1; k1 >= 0; --k1) {
            acc = acc * t + Jet::constant(f.at(k1, l - k1), t.center(), t.order());
        }
        out.push_back(acc);
    }
    return out;
}

// Coefficients in v of (1/s!) (d^s f / d z1^s)(eta v, v): entry l equals
// sum over k1 + k2 = l + s, k1 >= s of binomial(k1, s) a_{k1,k2} eta^{k1-s}.
// These arrays are exactly the per-line measurements the reconstruction
// consumes; differentiating the slice polynomials reproduces them.
inline std::vector<Complex> line_restriction_jets(const TaylorSeries2& f, Complex eta, int s) {
    if (s < 0) throw std::invalid_argument("line_restriction_jets: negative derivative order");
    const int d = f.degree();
    std::vector<Complex> out(static_cast<std::size_t>(d) + 1, Complex(0.0, 0.0));
    for (int l = 0; l <= d; ++l) {
        if (l + s > d) break;
        Complex acc(0.0, 0.0);
        // k1 runs over s .. l + s; eta^{k1-s} accumulated incrementally.
        Complex ep(1.0, 0.0);
        for (int k1 = s; k1 <= l + s; ++k1) {
            acc += binom(k1, s) * f.at(k1, l + s - k1) * ep;
            ep *= eta;
        }
        out[static_cast<std::size_t>(l)] = acc;
    }
    return out;
}

enum class Axis { z1_zero, z2_zero };

// Coefficient row along one axis: for Axis::z1_zero the row a_{u, k2}
// indexed by k2 (the data of (1/u!) d^u f/d z1^u restricted to z1 = 0), for
// Axis::z2_zero the column a_{k1, u} indexed by k1.
inline std::vector<Complex> axis_coefficients(const TaylorSeries2& f, Axis axis, int u) {
    if (u < 0) throw std::invalid_argument("axis_coefficients: negative order");
    const int d = f.degree();
    std::vector<Complex> out(static_cast<std::size_t>(d) + 1, Complex(0.0, 0.0));
    for (int j = 0; j + u <= d; ++j) {
        out[static_cast<std::size_t>(j)] =
            axis == Axis::z1_zero ? f.at(u, j) : f.at(j, u);
    }
    return out;
}

// Closed form of M sum_{l >= N} (l + 1) x^l, the standard bound for the tail
// of a series whose degree-l block is dominated by M (l + 1) x^l. Requires
// 0 <= x < 1.
inline double coefficient_tail_bound(double M, double x, int N) {
    if (!(M >= 0.0) || !std::isfinite(M)) {
        throw std::invalid_argument("coefficient_tail_bound: bad magnitude");
    }
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::invalid_argument("coefficient_tail_bound: ratio outside [0, 1)");
    }
    if (N < 0) throw std::invalid_argument("coefficient_tail_bound: negative cutoff");
    const double nn = static_cast<double>(N);
    return M * std::pow(x, nn) * ((nn + 1.0) - nn * x) / ((1.0 - x) * (1.0 - x));
}

} // namespace holoball
