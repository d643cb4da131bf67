#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace holoball {

using Complex = std::complex<double>;

inline bool is_finite(Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Dense univariate polynomial over the complex numbers, coefficients stored
// in ascending degree. Canonical form: trailing coefficients that are exactly
// zero are trimmed, so the zero polynomial has no coefficients and degree -1.
// Only exact zeros are trimmed; small results of cancellation stay visible.
class Poly {
public:
    Poly() = default;

    explicit Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {
        for (Complex v : c_) {
            if (!is_finite(v)) throw std::invalid_argument("Poly: non-finite coefficient");
        }
        trim();
    }

    static Poly zero() { return Poly{}; }

    static Poly constant(Complex v) { return Poly{{v}}; }

    // X^k
    static Poly monomial(int k, Complex coeff = Complex(1.0, 0.0)) {
        if (k < 0) throw std::invalid_argument("Poly::monomial: negative degree");
        std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex(0.0, 0.0));
        c.back() = coeff;
        return Poly{std::move(c)};
    }

    // X - root
    static Poly linear_factor(Complex root) { return Poly{{-root, Complex(1.0, 0.0)}}; }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Complex coeff(int k) const {
        if (k < 0 || static_cast<std::size_t>(k) >= c_.size()) return Complex(0.0, 0.0);
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<Complex>& coeffs() const { return c_; }

    Complex eval(Complex x) const {
        Complex acc(0.0, 0.0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly{};
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) {
            d[i - 1] = static_cast<double>(i) * c_[i];
        }
        return Poly{std::move(d)};
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), Complex(0.0, 0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return Poly{std::move(c)};
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * Complex(-1.0, 0.0)); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly{std::move(c)};
    }

    friend Poly operator*(const Poly& a, Complex s) {
        std::vector<Complex> c = a.c_;
        for (Complex& v : c) v *= s;
        return Poly{std::move(c)};
    }

    friend Poly operator*(Complex s, const Poly& a) { return a * s; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Complex(0.0, 0.0)) c_.pop_back();
    }

    std::vector<Complex> c_; // ascending degree
};

struct DivModResult {
    Poly quotient;
    Poly remainder;
};

// Euclidean division: a = q * g + r with deg r < deg g. Throws if g is zero.
inline DivModResult poly_divmod(const Poly& a, const Poly& g) {
    if (g.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    const int dg = g.degree();
    if (a.degree() < dg) return {Poly{}, a};

    std::vector<Complex> rem = a.coeffs();
    const Complex lead = g.coeff(dg);
    std::vector<Complex> quot(static_cast<std::size_t>(a.degree() - dg) + 1, Complex(0.0, 0.0));
    for (int i = a.degree(); i >= dg; --i) {
        const Complex q = rem[static_cast<std::size_t>(i)] / lead;
        quot[static_cast<std::size_t>(i - dg)] = q;
        if (q == Complex(0.0, 0.0)) continue;
        for (int j = 0; j <= dg; ++j) {
            rem[static_cast<std::size_t>(i - dg + j)] -= q * g.coeff(j);
        }
    }
    rem.resize(static_cast<std::size_t>(dg > 0 ? dg : 0));
    return {Poly{std::move(quot)}, Poly{std::move(rem)}};
}

} // namespace holoball
