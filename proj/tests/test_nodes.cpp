#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include "holoball/jet.hpp"
#include "holoball/nodes.hpp"
#include "holoball/poly.hpp"

using holoball::Complex;
using holoball::Jet;
using holoball::Node;
using holoball::NodeSet;
using holoball::Poly;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("multiset counts match the closed form", "[nodes]") {
    CHECK(holoball::multiset_count(0, 0) == 1);
    CHECK(holoball::multiset_count(2, 0) == 0);
    CHECK(holoball::multiset_count(0, 5) == 1);
    CHECK(holoball::multiset_count(3, 2) == 4);  // aaa aab abb bbb
    CHECK(holoball::multiset_count(2, 3) == 6);
    CHECK(holoball::multiset_count(5, 1) == 1);
    CHECK_THROWS_AS(holoball::multiset_count(35, 36), std::overflow_error);
    CHECK_THROWS_AS(holoball::multiset_count(-1, 2), std::invalid_argument);
}

TEST_CASE("node sets validate their input", "[nodes]") {
    CHECK_THROWS_AS(NodeSet({{Complex(1.0, 0.0), 1}, {Complex(1.0, 0.0), 2}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NodeSet({{Complex(1.0, 0.0), -1}}), std::invalid_argument);
    const NodeSet ok({{Complex(0.0, 0.0), 1}, {Complex(1.0, 0.0), 2}});
    CHECK(ok.total_multiplicity() == 3);
}

TEST_CASE("node polynomial expands the factored form", "[nodes]") {
    const NodeSet nodes({{Complex(1.0, 0.0), 2}});
    const Poly g = nodes.node_polynomial(); // (X-1)^2
    CHECK(g.degree() == 2);
    CHECK(close(g.coeff(0), Complex(1.0, 0.0)));
    CHECK(close(g.coeff(1), Complex(-2.0, 0.0)));
    CHECK(close(g.coeff(2), Complex(1.0, 0.0)));
}

TEST_CASE("cofactor jets expand the other nodes' factors", "[nodes]") {
    const NodeSet nodes({{Complex(0.0, 0.0), 1}, {Complex(1.0, 0.0), 1}});
    const Jet c = nodes.cofactor_jet(0, Complex(0.0, 0.0), 0); // (t-1) at 0
    CHECK(close(c.coeff(0), Complex(-1.0, 0.0)));
}

TEST_CASE("monomial quotients by the node polynomial match long division", "[nodes]") {
    const NodeSet dbl({{Complex(1.0, 0.0), 2}});
    const Poly q1 = holoball::quotient_power(3, dbl); // X + 2
    CHECK(q1.degree() == 1);
    CHECK(close(q1.coeff(0), Complex(2.0, 0.0)));
    CHECK(close(q1.coeff(1), Complex(1.0, 0.0)));

    const NodeSet mixed({{Complex(0.0, 0.0), 2}, {Complex(1.0, 0.0), 1}});
    const Poly q2 = holoball::quotient_power(5, mixed); // X^2 + X + 1
    CHECK(q2.degree() == 2);
    CHECK(close(q2.coeff(0), Complex(1.0, 0.0)));
    CHECK(close(q2.coeff(1), Complex(1.0, 0.0)));
    CHECK(close(q2.coeff(2), Complex(1.0, 0.0)));

    CHECK(holoball::quotient_power(1, dbl).is_zero()); // degree below the node count
}

TEST_CASE("monomial quotients agree with long division on a complex node set", "[nodes]") {
    const NodeSet nodes({{Complex(0.5, 0.5), 2}, {Complex(-1.0, 0.25), 1}});
    for (int k = 0; k <= 8; ++k) {
        const Poly direct = holoball::quotient_power(k, nodes);
        const Poly ref =
            holoball::poly_divmod(Poly::monomial(k), nodes.node_polynomial()).quotient;
        const int d = std::max(direct.degree(), ref.degree());
        for (int i = 0; i <= d; ++i) {
            CHECK(close(direct.coeff(i), ref.coeff(i), 1e-10));
        }
    }
}

TEST_CASE("confluent evaluation reproduces divided interpolation values", "[nodes]") {
    // Simple nodes 0 and 1, h = t^2, target X = 2: jets of h/(X - t) at the
    // nodes are 0 and 1, and the weighted combination gives 2.
    {
        const NodeSet nodes({{Complex(0.0, 0.0), 1}, {Complex(1.0, 0.0), 1}});
        const std::vector<Jet> hjets = {
            Jet::constant(Complex(0.0, 0.0), Complex(0.0, 0.0), 0),
            Jet::constant(Complex(1.0, 0.0), Complex(1.0, 0.0), 0)};
        const Complex v = holoball::hermite_L(nodes, hjets, Complex(2.0, 0.0));
        CHECK(close(v, Complex(2.0, 0.0)));
    }
    // Double node 1, h = t^2, target X = 3: jet of t^2/(3-t) at 1 is
    // [1/2, 5/4]; the top coefficient against (3-1)^2 gives 5.
    {
        const NodeSet nodes({{Complex(1.0, 0.0), 2}});
        const Jet num = holoball::of_poly_at_center(Poly::monomial(2), Complex(1.0, 0.0), 1);
        const Jet den = holoball::of_poly_at_center(
            Poly({Complex(3.0, 0.0), Complex(-1.0, 0.0)}), Complex(1.0, 0.0), 1);
        const std::vector<Jet> hjets = {holoball::jet_div(num, den)};
        const Complex v = holoball::hermite_L(nodes, hjets, Complex(3.0, 0.0));
        CHECK(close(v, Complex(5.0, 0.0)));
    }
}

TEST_CASE("the interpolating polynomial is the division remainder", "[nodes]") {
    const NodeSet nodes({{Complex(1.0, 0.0), 2}});
    const std::vector<Jet> fjets = {
        holoball::of_poly_at_center(Poly::monomial(3), Complex(1.0, 0.0), 1)};
    const Poly h = holoball::hermite_polynomial(nodes, fjets); // 3X - 2
    CHECK(h.degree() == 1);
    CHECK(close(h.coeff(0), Complex(-2.0, 0.0)));
    CHECK(close(h.coeff(1), Complex(3.0, 0.0)));
}

TEST_CASE("interpolation at simple nodes matches Lagrange", "[nodes]") {
    // f = X^2 at nodes 0 and 1 interpolates to X.
    const NodeSet nodes({{Complex(0.0, 0.0), 1}, {Complex(1.0, 0.0), 1}});
    const std::vector<Jet> fjets = {
        holoball::of_poly_at_center(Poly::monomial(2), Complex(0.0, 0.0), 0),
        holoball::of_poly_at_center(Poly::monomial(2), Complex(1.0, 0.0), 0)};
    const Poly h = holoball::hermite_polynomial(nodes, fjets);
    CHECK(h.degree() == 1);
    CHECK(close(h.coeff(0), Complex(0.0, 0.0)));
    CHECK(close(h.coeff(1), Complex(1.0, 0.0)));
}

TEST_CASE("interpolant of a complex polynomial matches its jets at every node", "[nodes]") {
    const NodeSet nodes({{Complex(0.3, -0.2), 2}, {Complex(-0.75, 0.4), 3}});
    const Poly f({Complex(0.2, 1.0), Complex(-1.0, 0.5), Complex(0.0, -0.25),
                  Complex(1.5, 0.0), Complex(0.0, 1.0), Complex(-0.5, -0.5),
                  Complex(1.0, 0.0)});
    std::vector<Jet> fjets;
    for (const Node& n : nodes.nodes()) {
        fjets.push_back(holoball::of_poly_at_center(f, n.eta, n.mult - 1));
    }
    const Poly h = holoball::hermite_polynomial(nodes, fjets);
    CHECK(h.degree() < nodes.total_multiplicity());
    for (const Node& n : nodes.nodes()) {
        const Jet jh = holoball::of_poly_at_center(h, n.eta, n.mult - 1);
        const Jet jf = holoball::of_poly_at_center(f, n.eta, n.mult - 1);
        for (int s = 0; s < n.mult; ++s) {
            CHECK(close(jh.coeff(s), jf.coeff(s), 1e-10));
        }
    }
}
