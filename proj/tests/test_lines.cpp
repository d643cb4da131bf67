#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include "holoball/lines.hpp"

using holoball::Complex;
using holoball::DomainGuard;
using holoball::LineConfig;
using holoball::MiddleLine;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("configurations validate and canonicalize their lines", "[lines]") {
    CHECK_THROWS_AS(LineConfig(1, {{Complex(0.0, 0.0), 1}}, 0), std::invalid_argument);
    CHECK_THROWS_AS(LineConfig(0, {{Complex(0.5, 0.0), 1}, {Complex(0.5, 0.0), 2}}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(LineConfig(-1, {}, 0), std::invalid_argument);

    const LineConfig cfg(1, {{Complex(0.0, 0.9), 1}, {Complex(0.5, 0.0), 2}}, 2);
    CHECK(cfg.m1() == 1);
    CHECK(cfg.mn() == 2);
    CHECK(cfg.middle_count() == 2);
    CHECK(cfg.n() == 4);
    CHECK(cfg.total_multiplicity() == 6);
    CHECK(cfg.middle_multiplicity_sum() == 3);
    // sorted by modulus first: 0.5 before 0.9i
    CHECK(close(cfg.middle()[0].eta, Complex(0.5, 0.0)));
    CHECK(close(cfg.middle()[1].eta, Complex(0.0, 0.9)));
}

TEST_CASE("per-line multiplicities are addressed one-based from the z2 plane", "[lines]") {
    const LineConfig cfg(1, {{Complex(0.5, 0.0), 2}}, 3);
    CHECK(cfg.mult_of(1) == 1);
    CHECK(cfg.mult_of(2) == 2);
    CHECK(cfg.mult_of(3) == 3);
    CHECK_THROWS_AS(cfg.mult_of(4), std::invalid_argument);
}

TEST_CASE("threshold exponents count later multiplicities", "[lines]") {
    const LineConfig cfg(2, {{Complex(0.5, 0.0), 2}, {Complex(-1.0, 0.0), 1}}, 1);
    // lines in order: z1 plane (2), eta 0.5 (2), eta -1 (1), z2 plane (1)
    CHECK(holoball::capital_n_u(cfg, 1, 0) == 4);
    CHECK(holoball::capital_n_u(cfg, 1, 1) == 5);
    CHECK(holoball::capital_n_u(cfg, 2, 0) == 2);
    CHECK(holoball::capital_n_u(cfg, 3, 0) == 1);
    CHECK(holoball::capital_n_u(cfg, 4, 0) == 0);
    CHECK_THROWS_AS(holoball::capital_n_u(cfg, 1, 2), std::invalid_argument);
}

TEST_CASE("slope-to-distance normalization fixes the endpoints", "[lines]") {
    CHECK(holoball::alpha(Complex(1.0, 0.0)) == Catch::Approx(0.7071067811865475));
    CHECK(holoball::alpha(Complex(0.0, 0.0)) == Catch::Approx(0.0));
    const LineConfig cfg(1, {{Complex(1.0, 0.0), 1}}, 1);
    CHECK(holoball::alpha(cfg, 1) == Catch::Approx(0.0));
    CHECK(holoball::alpha(cfg, 3) == Catch::Approx(1.0));
    CHECK(holoball::alpha(cfg, 2) == Catch::Approx(0.7071067811865475));
}

TEST_CASE("the configured product evaluates factor by factor", "[lines]") {
    const LineConfig cfg(1, {{Complex(0.5, 0.0), 1}}, 1);
    // z1 (z1 - 0.5 z2) z2 at (0.2, 0.3) = 0.2 * 0.05 * 0.3
    CHECK(close(holoball::g_eval(cfg, Complex(0.2, 0.0), Complex(0.3, 0.0)),
                Complex(0.003, 0.0)));
    const LineConfig none(0, {}, 0);
    CHECK(close(holoball::g_eval(none, Complex(0.9, 0.0), Complex(0.1, 0.0)),
                Complex(1.0, 0.0)));
}

TEST_CASE("two-point cofactors reproduce hand-computed splits", "[lines]") {
    {
        // g = z1 z2: g(zeta) - g(z) = z2 (zeta1 - z1) + zeta1 (zeta2 - z2)
        const LineConfig cfg(1, {}, 1);
        const Complex zeta1(0.4, 0.1), zeta2(-0.2, 0.3), z1(0.1, -0.2), z2(0.25, 0.0);
        const auto [p1, p2] = holoball::hefer_pn(cfg, zeta1, zeta2, z1, z2);
        CHECK(close(p1, z2));
        CHECK(close(p2, zeta1));
    }
    {
        // g = z1 - eta z2: constant cofactors (1, -eta)
        const Complex eta(0.5, -0.25);
        const LineConfig cfg(0, {{eta, 1}}, 0);
        const auto [p1, p2] = holoball::hefer_pn(cfg, Complex(0.3, 0.0), Complex(0.1, 0.1),
                                                 Complex(-0.2, 0.2), Complex(0.0, -0.1));
        CHECK(close(p1, Complex(1.0, 0.0)));
        CHECK(close(p2, -eta));
    }
}

TEST_CASE("the two-point identity holds for a mixed configuration", "[lines]") {
    const LineConfig cfg(2, {{Complex(0.5, 0.25), 2}, {Complex(-0.8, 0.1), 1}}, 1);
    const Complex zeta1(0.31, -0.12), zeta2(0.05, 0.22), z1(-0.17, 0.08), z2(0.21, -0.04);
    const auto [p1, p2] = holoball::hefer_pn(cfg, zeta1, zeta2, z1, z2);
    const Complex lhs =
        holoball::g_eval(cfg, zeta1, zeta2) - holoball::g_eval(cfg, z1, z2);
    const Complex rhs = p1 * (zeta1 - z1) + p2 * (zeta2 - z2);
    CHECK(close(lhs, rhs, 1e-14));
}

TEST_CASE("the split also holds when the points share a coordinate", "[lines]") {
    const LineConfig cfg(1, {{Complex(0.5, 0.0), 1}}, 2);
    const Complex zeta1(0.0, 0.0), zeta2(0.3, 0.0), z1(0.2, 0.0), z2(0.3, 0.0);
    const auto [p1, p2] = holoball::hefer_pn(cfg, zeta1, zeta2, z1, z2);
    const Complex lhs =
        holoball::g_eval(cfg, zeta1, zeta2) - holoball::g_eval(cfg, z1, z2);
    CHECK(close(lhs, p1 * (zeta1 - z1) + p2 * (zeta2 - z2), 1e-14));
}

TEST_CASE("the guarded domain excludes the ball boundary, the planes, and the lines",
          "[lines]") {
    const LineConfig cfg(1, {{Complex(0.5, 0.0), 1}}, 1);
    const DomainGuard guard;
    CHECK(holoball::in_domain(cfg, Complex(0.2, 0.0), Complex(0.3, 0.0), guard));
    CHECK_FALSE(holoball::in_domain(cfg, Complex(0.9, 0.0), Complex(0.9, 0.0), guard));
    CHECK_FALSE(holoball::in_domain(cfg, Complex(0.2, 0.0), Complex(0.0, 0.0), guard));
    CHECK_FALSE(holoball::in_domain(cfg, Complex(0.0, 0.0), Complex(0.3, 0.0), guard));
    CHECK_FALSE(holoball::in_domain(cfg, Complex(0.15, 0.0), Complex(0.3, 0.0), guard));

    // without a z1-plane the z1 = 0 slice is allowed
    const LineConfig no_z1(0, {{Complex(0.5, 0.0), 1}}, 1);
    CHECK(holoball::in_domain(no_z1, Complex(0.0, 0.0), Complex(0.3, 0.0), guard));
}
