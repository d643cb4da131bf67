#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "holoball/poly.hpp"

namespace holoball {

// Disc automorphism vanishing at eta: (z - eta) / (1 - conj(eta) z).
// Unimodular on the unit circle, modulus below one inside.
inline Complex blaschke_eval(Complex eta, Complex z) {
    if (!is_finite(eta) || !is_finite(z)) {
        throw std::invalid_argument("blaschke_eval: non-finite input");
    }
    if (!(std::abs(eta) < 1.0)) {
        throw std::invalid_argument("blaschke_eval: node must lie inside the unit disc");
    }
    return (z - eta) / (1.0 - std::conj(eta) * z);
}

inline Complex blaschke_product(const std::vector<Complex>& nodes, Complex z) {
    Complex acc(1.0, 0.0);
    for (Complex eta : nodes) acc *= blaschke_eval(eta, z);
    return acc;
}

namespace detail {

inline void require_disc_nodes(const std::vector<Complex>& nodes) {
    if (nodes.empty()) throw std::invalid_argument("disc nodes: empty set");
    double maxmod = 0.0;
    for (Complex eta : nodes) {
        if (!is_finite(eta)) throw std::invalid_argument("disc nodes: non-finite node");
        if (!(std::abs(eta) < 1.0)) {
            throw std::invalid_argument("disc nodes: node outside the open unit disc");
        }
        maxmod = std::max(maxmod, std::abs(eta));
    }
    const double tol = 1e-12 * (1.0 + maxmod);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (std::abs(nodes[i] - nodes[j]) <= tol) {
                throw std::invalid_argument("disc nodes: nodes too close to distinguish");
            }
        }
    }
}

} // namespace detail

// Interpolant through the given node values built from Blaschke factors:
//   sum_l (1 - |eta_l|^2) / (1 - conj(eta_l) z)
//         * prod_{j != l} [phi_{eta_j}(z) / phi_{eta_j}(eta_l)] * v_l.
// Reproduces v_l at eta_l; the correction (1 - |eta_l|^2)/(1 - conj(eta_l) z)
// equals one at the node itself.
inline Complex disc_interpolant(const std::vector<Complex>& nodes,
                                const std::vector<Complex>& values, Complex z) {
    detail::require_disc_nodes(nodes);
    if (values.size() != nodes.size()) {
        throw std::invalid_argument("disc_interpolant: values/nodes size mismatch");
    }
    Complex acc(0.0, 0.0);
    for (std::size_t l = 0; l < nodes.size(); ++l) {
        const Complex eta = nodes[l];
        Complex term = (1.0 - std::norm(eta)) / (1.0 - std::conj(eta) * z);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == l) continue;
            term *= blaschke_eval(nodes[j], z) / blaschke_eval(nodes[j], eta);
        }
        acc += term * values[l];
    }
    return acc;
}

// Defect of the interpolant: the Blaschke product over the nodes times the
// contour average of f(zeta) zeta / (B(zeta) (zeta - z)) on the unit circle,
// approximated by the trapezoidal rule on npts roots of unity. For f
// holomorphic across the closed disc, interpolant + defect recovers f(z).
template <typename F>
inline Complex disc_defect(F&& f, const std::vector<Complex>& nodes, Complex z,
                           int npts = 4096) {
    detail::require_disc_nodes(nodes);
    if (npts < 8) throw std::invalid_argument("disc_defect: too few quadrature points");
    if (!(std::abs(z) <= 0.95)) {
        throw std::domain_error("disc_defect: point too close to the circle for quadrature");
    }
    Complex acc(0.0, 0.0);
    for (int k = 0; k < npts; ++k) {
        const double theta = 2.0 * 3.14159265358979323846 * static_cast<double>(k) /
                             static_cast<double>(npts);
        const Complex zeta(std::cos(theta), std::sin(theta));
        acc += f(zeta) * zeta / (blaschke_product(nodes, zeta) * (zeta - z));
    }
    acc /= static_cast<double>(npts);
    return blaschke_product(nodes, z) * acc;
}

} // namespace holoball
