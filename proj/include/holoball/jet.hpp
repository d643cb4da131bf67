#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "holoball/poly.hpp"

namespace holoball {

// Truncated Taylor expansion of a function of one complex variable about a
// fixed center. Coefficient s stores f^(s)(center)/s!, so coefficient arrays
// combine by plain truncated convolution. Arithmetic requires both operands
// to share the same center and the same order; mixing expansions about
// different points is a logic error, not something to coerce silently.
class Jet {
public:
    Jet(Complex center, int order)
        : center_(center), c_(static_cast<std::size_t>(check_order(order)) + 1, Complex(0.0, 0.0)) {}

    Jet(Complex center, std::vector<Complex> coeffs) : center_(center), c_(std::move(coeffs)) {
        if (c_.empty()) throw std::invalid_argument("Jet: empty coefficient list");
    }

    // Expansion of the identity map t -> t about the center.
    static Jet identity(Complex center, int order) {
        Jet j(center, order);
        j.c_[0] = center;
        if (order >= 1) j.c_[1] = Complex(1.0, 0.0);
        return j;
    }

    static Jet constant(Complex value, Complex center, int order) {
        Jet j(center, order);
        j.c_[0] = value;
        return j;
    }

    Complex center() const { return center_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }

    Complex coeff(int s) const {
        if (s < 0 || static_cast<std::size_t>(s) >= c_.size()) {
            throw std::out_of_range("Jet::coeff: index past order");
        }
        return c_[static_cast<std::size_t>(s)];
    }

    Complex value() const { return c_[0]; }

    friend Jet operator+(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
        return r;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r = a;
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
        return r;
    }

    friend Jet operator*(const Jet& a, const Jet& b) {
        a.require_compatible(b);
        Jet r(a.center_, a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == Complex(0.0, 0.0)) continue;
            for (std::size_t j = 0; i + j < b.c_.size(); ++j) {
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    friend Jet operator*(const Jet& a, Complex s) {
        Jet r = a;
        for (Complex& v : r.c_) v *= s;
        return r;
    }

    friend Jet operator*(Complex s, const Jet& a) { return a * s; }

    // Multiplicative inverse. Requires a nonzero constant term: a zero there
    // means the expansion center sits on a pole of the reciprocal.
    Jet reciprocal() const {
        if (c_[0] == Complex(0.0, 0.0)) {
            throw std::domain_error("Jet::reciprocal: zero constant term (center on a pole)");
        }
        Jet r(center_, order());
        r.c_[0] = Complex(1.0, 0.0) / c_[0];
        for (std::size_t s = 1; s < c_.size(); ++s) {
            Complex acc(0.0, 0.0);
            for (std::size_t i = 1; i <= s; ++i) acc += c_[i] * r.c_[s - i];
            r.c_[s] = -acc / c_[0];
        }
        return r;
    }

    // Integer power, exponent >= 0.
    Jet pow(int e) const {
        if (e < 0) throw std::invalid_argument("Jet::pow: negative exponent");
        Jet acc = Jet::constant(Complex(1.0, 0.0), center_, order());
        Jet base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("Jet: negative order");
        return order;
    }

    void require_compatible(const Jet& other) const {
        if (center_ != other.center_) {
            throw std::invalid_argument("Jet: arithmetic between different centers");
        }
        if (c_.size() != other.c_.size()) {
            throw std::invalid_argument("Jet: arithmetic between different orders");
        }
    }

    Complex center_;
    std::vector<Complex> c_;
};

// Taylor re-expansion of a polynomial about a center, to the given order.
// Horner's scheme applied to the identity jet; exact up to rounding.
inline Jet of_poly_at_center(const Poly& p, Complex center, int order) {
    Jet acc = Jet::constant(Complex(0.0, 0.0), center, order);
    const Jet x = Jet::identity(center, order);
    const auto& c = p.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * x + Jet::constant(c[i], center, order);
    }
    return acc;
}

inline Jet jet_div(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

} // namespace holoball
