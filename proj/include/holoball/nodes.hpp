#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "holoball/jet.hpp"
#include "holoball/poly.hpp"

namespace holoball {

struct Node {
    Complex eta;
    int mult = 0;
};

// A finite set of pairwise distinct interpolation nodes with nonnegative
// multiplicities. Distinctness is checked with a relative tolerance so that
// two nodes meant to coincide fail loudly instead of producing a nearly
// singular divided-difference table later.
class NodeSet {
public:
    explicit NodeSet(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
        double max_mod = 0.0;
        for (const Node& n : nodes_) {
            if (!is_finite(n.eta)) throw std::invalid_argument("NodeSet: non-finite node");
            if (n.mult < 0) throw std::invalid_argument("NodeSet: negative multiplicity");
            max_mod = std::max(max_mod, std::abs(n.eta));
        }
        const double tol = 1e-12 * (1.0 + max_mod);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
                if (std::abs(nodes_[i].eta - nodes_[j].eta) < tol) {
                    throw std::invalid_argument("NodeSet: coincident nodes");
                }
            }
        }
    }

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    const Node& operator[](std::size_t i) const { return nodes_[i]; }

    int total_multiplicity() const {
        int n = 0;
        for (const Node& nd : nodes_) n += nd.mult;
        return n;
    }

    // prod_j (X - eta_j)^{m_j}
    Poly node_polynomial() const {
        Poly g = Poly::constant(Complex(1.0, 0.0));
        for (const Node& nd : nodes_) {
            const Poly f = Poly::linear_factor(nd.eta);
            for (int k = 0; k < nd.mult; ++k) g = g * f;
        }
        return g;
    }

    // prod_{j != skip} (t - eta_j)^{m_j} expanded about `center` to `order`.
    Jet cofactor_jet(std::size_t skip, Complex center, int order) const {
        Jet acc = Jet::constant(Complex(1.0, 0.0), center, order);
        const Jet t = Jet::identity(center, order);
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            if (j == skip) continue;
            const Jet f = t - Jet::constant(nodes_[j].eta, center, order);
            acc = acc * f.pow(nodes_[j].mult);
        }
        return acc;
    }

private:
    std::vector<Node> nodes_;
};

// Number of size-q multisets drawn from m distinct symbols, as a 64-bit
// integer. Computed multiplicatively through 128-bit intermediates; anything
// that cannot be represented exactly in int64 raises instead of wrapping.
inline std::int64_t multiset_count(std::int64_t q, std::int64_t m) {
    if (q < 0 || m < 0) throw std::invalid_argument("multiset_count: negative argument");
    if (m == 0) return q == 0 ? 1 : 0;
    // binomial(q + m - 1, q), accumulated as running product n!/k! style.
    const std::int64_t n = q + m - 1;
    const std::int64_t k = std::min(q, n - q);
    __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i);
        acc /= i; // divides exactly: acc is binomial(n-k+i, i) after this step
        if (acc > static_cast<__int128>(std::numeric_limits<std::int64_t>::max())) {
            throw std::overflow_error("multiset_count: result exceeds 64-bit range");
        }
    }
    return static_cast<std::int64_t>(acc);
}

// Quotient of X^k by the node polynomial of `nodes`, in closed form. The
// coefficient of X^{k-N-u} is the complete homogeneous sum over exponent
// patterns v with |v| = u, each node weighted by multiset_count(v_j, m_j)
// times eta_j^{v_j}. Returns the zero polynomial for k < N.
inline Poly quotient_power(int k, const NodeSet& nodes) {
    if (k < 0) throw std::invalid_argument("quotient_power: negative exponent");
    const int total = nodes.total_multiplicity();
    if (k < total) return Poly::zero();
    const int top = k - total;

    // Convolve the per-node weight series  sum_v multiset_count(v, m) eta^v X^v,
    // truncated at degree `top`.
    std::vector<Complex> acc(static_cast<std::size_t>(top) + 1, Complex(0.0, 0.0));
    acc[0] = Complex(1.0, 0.0);
    for (const Node& nd : nodes.nodes()) {
        if (nd.mult == 0) continue;
        std::vector<Complex> w(static_cast<std::size_t>(top) + 1);
        Complex eta_pow(1.0, 0.0);
        for (int v = 0; v <= top; ++v) {
            w[static_cast<std::size_t>(v)] =
                static_cast<double>(multiset_count(v, nd.mult)) * eta_pow;
            eta_pow *= nd.eta;
        }
        std::vector<Complex> next(static_cast<std::size_t>(top) + 1, Complex(0.0, 0.0));
        for (int i = 0; i <= top; ++i) {
            if (acc[static_cast<std::size_t>(i)] == Complex(0.0, 0.0)) continue;
            for (int j = 0; i + j <= top; ++j) {
                next[static_cast<std::size_t>(i + j)] +=
                    acc[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)];
            }
        }
        acc = std::move(next);
    }

    std::vector<Complex> coeffs(static_cast<std::size_t>(top) + 1, Complex(0.0, 0.0));
    for (int u = 0; u <= top; ++u) {
        coeffs[static_cast<std::size_t>(top - u)] = acc[static_cast<std::size_t>(u)];
    }
    return Poly{std::move(coeffs)};
}

namespace detail {

inline void require_node_jets(const NodeSet& nodes, std::span<const Jet> jets) {
    if (jets.size() != nodes.size()) {
        throw std::invalid_argument("node jets: one jet per node required");
    }
    for (std::size_t p = 0; p < nodes.size(); ++p) {
        if (nodes[p].mult == 0) continue;
        if (jets[p].center() != nodes[p].eta) {
            throw std::invalid_argument("node jets: jet center differs from its node");
        }
        if (jets[p].order() < nodes[p].mult - 1) {
            throw std::invalid_argument("node jets: jet order below multiplicity - 1");
        }
    }
}

// Top coefficient (index m_p - 1) of jets[p] divided by the cofactor product
// of the other nodes, expanded about node p.
inline Complex confluent_weight(const NodeSet& nodes, std::span<const Jet> jets, std::size_t p) {
    const int order = nodes[p].mult - 1;
    // Truncate the supplied jet to the needed order.
    std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
    for (int s = 0; s <= order; ++s) c[static_cast<std::size_t>(s)] = jets[p].coeff(s);
    const Jet num(nodes[p].eta, std::move(c));
    const Jet den = nodes.cofactor_jet(p, nodes[p].eta, order);
    return jet_div(num, den).coeff(order);
}

} // namespace detail

// Confluent interpolation functional: prod_j (X - eta_j)^{m_j} times the sum
// over active nodes of the top coefficient of (supplied jet at node p)
// divided by the product of the other node factors. The caller decides what
// function the per-node jets expand; multiplicity-zero nodes are skipped.
inline Complex hermite_L(const NodeSet& nodes, std::span<const Jet> jets, Complex X) {
    detail::require_node_jets(nodes, jets);
    Complex sum(0.0, 0.0);
    for (std::size_t p = 0; p < nodes.size(); ++p) {
        if (nodes[p].mult == 0) continue;
        sum += detail::confluent_weight(nodes, jets, p);
    }
    Complex pref(1.0, 0.0);
    for (const Node& nd : nodes.nodes()) {
        Complex f = X - nd.eta;
        for (int k = 0; k < nd.mult; ++k) pref *= f;
    }
    return pref * sum;
}

// Confluent interpolation polynomial from per-node expansions of the target
// function itself: the unique polynomial of degree < N matching each supplied
// jet through order m_p - 1. Returned in canonical dense form.
inline Poly hermite_polynomial(const NodeSet& nodes, std::span<const Jet> jets) {
    detail::require_node_jets(nodes, jets);
    Poly result = Poly::zero();
    for (std::size_t p = 0; p < nodes.size(); ++p) {
        const int mp = nodes[p].mult;
        if (mp == 0) continue;
        const int order = mp - 1;
        std::vector<Complex> c(static_cast<std::size_t>(order) + 1);
        for (int s = 0; s <= order; ++s) c[static_cast<std::size_t>(s)] = jets[p].coeff(s);
        const Jet num(nodes[p].eta, std::move(c));
        const Jet den = nodes.cofactor_jet(p, nodes[p].eta, order);
        const Jet d = jet_div(num, den);

        Poly cof = Poly::constant(Complex(1.0, 0.0));
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == p) continue;
            const Poly f = Poly::linear_factor(nodes[j].eta);
            for (int k = 0; k < nodes[j].mult; ++k) cof = cof * f;
        }
        Poly local = Poly::zero();
        Poly shift_pow = Poly::constant(Complex(1.0, 0.0));
        const Poly shift = Poly::linear_factor(nodes[p].eta);
        for (int s = 0; s <= order; ++s) {
            local = local + d.coeff(s) * shift_pow;
            shift_pow = shift_pow * shift;
        }
        result = result + cof * local;
    }
    return result;
}

} // namespace holoball
