#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "holoball/disc.hpp"
#include "holoball/poly.hpp"

using holoball::Complex;
using holoball::Poly;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("disc automorphism basics", "[disc]") {
    // unimodular on the unit circle
    CHECK(std::abs(holoball::blaschke_eval(Complex(0.5, 0.0), Complex(0.0, 1.0))) ==
          Catch::Approx(1.0));
    // center zero is the identity
    CHECK(close(holoball::blaschke_eval(Complex(0.0, 0.0), Complex(0.3, -0.2)),
                Complex(0.3, -0.2)));
    // vanishes at its own center
    CHECK(close(holoball::blaschke_eval(Complex(0.4, 0.1), Complex(0.4, 0.1)),
                Complex(0.0, 0.0)));
    CHECK_THROWS_AS(holoball::blaschke_eval(Complex(1.0, 0.0), Complex(0.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("finite products multiply factors", "[disc]") {
    const std::vector<Complex> nodes = {Complex(0.2, 0.0), Complex(0.0, -0.4)};
    const Complex z(0.1, 0.3);
    const Complex expect = holoball::blaschke_eval(nodes[0], z) *
                           holoball::blaschke_eval(nodes[1], z);
    CHECK(close(holoball::blaschke_product(nodes, z), expect));
}

TEST_CASE("node validation on the disc", "[disc]") {
    const std::vector<Complex> values = {Complex(1.0, 0.0), Complex(2.0, 0.0)};
    CHECK_THROWS_AS(
        holoball::disc_interpolant({Complex(0.2, 0.0), Complex(0.2, 0.0)}, values,
                                   Complex(0.0, 0.0)),
        std::invalid_argument);
    CHECK_THROWS_AS(
        holoball::disc_interpolant({Complex(0.2, 0.0), Complex(1.1, 0.0)}, values,
                                   Complex(0.0, 0.0)),
        std::invalid_argument);
    CHECK_THROWS_AS(holoball::disc_interpolant({Complex(0.2, 0.0)}, values,
                                               Complex(0.0, 0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(holoball::disc_interpolant({}, {}, Complex(0.0, 0.0)),
                    std::invalid_argument);
}

TEST_CASE("the interpolant reproduces the node values", "[disc]") {
    const std::vector<Complex> nodes = {Complex(0.0, 0.0), Complex(0.5, 0.0)};
    const std::vector<Complex> values = {Complex(1.0, 0.0), Complex(2.0, 0.0)};
    CHECK(close(holoball::disc_interpolant(nodes, values, nodes[0]), values[0]));
    CHECK(close(holoball::disc_interpolant(nodes, values, nodes[1]), values[1]));
}

TEST_CASE("interpolant plus contour defect recovers the function", "[disc]") {
    const Poly f = Poly::monomial(3); // z^3
    const std::vector<Complex> nodes = {Complex(0.2, 0.0), Complex(0.0, -0.4)};
    std::vector<Complex> values;
    for (Complex nd : nodes) values.push_back(f.eval(nd));
    const Complex z(0.3, 0.0);
    const Complex interp = holoball::disc_interpolant(nodes, values, z);
    const Complex defect =
        holoball::disc_defect([&](Complex w) { return f.eval(w); }, nodes, z);
    CHECK(close(interp + defect, f.eval(z), 1e-10));
}

TEST_CASE("the contour correction refuses points near the boundary", "[disc]") {
    const std::vector<Complex> nodes = {Complex(0.2, 0.0)};
    const auto f = [](Complex w) { return w; };
    CHECK_THROWS_AS(holoball::disc_defect(f, nodes, Complex(0.96, 0.0)),
                    std::domain_error);
    CHECK_THROWS_AS(holoball::disc_defect(f, nodes, Complex(0.5, 0.0), 4),
                    std::invalid_argument);
}
