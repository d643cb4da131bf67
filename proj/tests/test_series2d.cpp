#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>
#include <vector>

#include "holoball/jet.hpp"
#include "holoball/series2d.hpp"

using holoball::Axis;
using holoball::Complex;
using holoball::Jet;
using holoball::TaylorSeries2;

namespace {
bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
} // namespace

TEST_CASE("binomial coefficients are exact in double range", "[series2d]") {
    CHECK(holoball::binom(0, 0) == 1.0);
    CHECK(holoball::binom(6, 3) == 20.0);
    CHECK(holoball::binom(10, 0) == 1.0);
    CHECK(holoball::binom(10, 10) == 1.0);
    CHECK(holoball::binom(5, 7) == 0.0);
    CHECK(holoball::binom(52, 26) == 495918532948104.0);
}

TEST_CASE("coefficient storage covers exactly the total-degree triangle", "[series2d]") {
    TaylorSeries2 f(3);
    CHECK(f.degree() == 3);
    f.set(1, 2, Complex(2.5, -1.0));
    CHECK(close(f.at(1, 2), Complex(2.5, -1.0)));
    CHECK(close(f.at(3, 3), Complex(0.0, 0.0))); // outside the triangle reads zero
    CHECK_THROWS_AS(f.set(2, 2, Complex(1.0, 0.0)), std::invalid_argument);
    f.add_at(1, 2, Complex(0.5, 1.0));
    CHECK(close(f.at(1, 2), Complex(3.0, 0.0)));
}

TEST_CASE("building from terms rejects duplicates", "[series2d]") {
    CHECK_THROWS_AS(
        holoball::build_series(2, {{0, 0, Complex(1.0, 0.0)}, {0, 0, Complex(2.0, 0.0)}}),
        std::invalid_argument);
    const TaylorSeries2 f =
        holoball::build_series(2, {{1, 1, Complex(1.0, 0.0)}, {2, 0, Complex(-1.0, 0.0)}});
    CHECK(close(f.at(1, 1), Complex(1.0, 0.0)));
    CHECK(close(f.at(2, 0), Complex(-1.0, 0.0)));
}

TEST_CASE("series products truncate at the stated degree", "[series2d]") {
    const TaylorSeries2 a =
        holoball::build_series(2, {{0, 0, Complex(1.0, 0.0)}, {1, 0, Complex(1.0, 0.0)}});
    const TaylorSeries2 b =
        holoball::build_series(2, {{0, 0, Complex(1.0, 0.0)}, {0, 1, Complex(1.0, 0.0)}});
    const TaylorSeries2 p = a * b; // 1 + z1 + z2 + z1 z2
    CHECK(close(p.at(0, 0), Complex(1.0, 0.0)));
    CHECK(close(p.at(1, 0), Complex(1.0, 0.0)));
    CHECK(close(p.at(0, 1), Complex(1.0, 0.0)));
    CHECK(close(p.at(1, 1), Complex(1.0, 0.0)));
    CHECK(close(p.at(2, 0), Complex(0.0, 0.0)));
}

TEST_CASE("geometric fixtures have product and diagonal coefficients", "[series2d]") {
    const TaylorSeries2 gp =
        holoball::geometric_product_series(Complex(0.5, 0.0), Complex(0.25, 0.0), 3);
    CHECK(close(gp.at(2, 1), Complex(0.0625, 0.0))); // 0.5^2 * 0.25
    CHECK(close(gp.at(0, 0), Complex(1.0, 0.0)));
    CHECK_THROWS_AS(holoball::geometric_product_series(Complex(1.0, 0.0), Complex(0.0, 0.0), 2),
                    std::invalid_argument);

    const TaylorSeries2 gd = holoball::geometric_diag_series(Complex(0.3, 0.0), 4);
    CHECK(close(gd.at(1, 1), Complex(0.18, 0.0))); // binom(2,1) * 0.3^2
    CHECK(close(gd.at(0, 3), Complex(0.027, 0.0)));
    CHECK_THROWS_AS(holoball::geometric_diag_series(Complex(0.8, 0.0), 4),
                    std::invalid_argument);
}

TEST_CASE("evaluation sums the triangle against the point", "[series2d]") {
    const TaylorSeries2 f = holoball::build_series(
        3, {{0, 0, Complex(1.0, 0.0)}, {2, 1, Complex(2.0, 0.0)}, {0, 3, Complex(0.0, 1.0)}});
    const Complex z1(0.3, 0.1), z2(-0.2, 0.25);
    const Complex want = Complex(1.0, 0.0) + 2.0 * z1 * z1 * z2 + Complex(0.0, 1.0) * z2 * z2 * z2;
    CHECK(close(holoball::eval2(f, z1, z2), want));
}

TEST_CASE("slice polynomials collect fixed total degree", "[series2d]") {
    // f = z1 + 2 z2: S_0 = 0, S_1(t) = t + 2.
    const TaylorSeries2 f =
        holoball::build_series(1, {{1, 0, Complex(1.0, 0.0)}, {0, 1, Complex(2.0, 0.0)}});
    const auto value_slices = holoball::slice_sums(f, Jet::identity(Complex(0.5, 0.0), 0));
    REQUIRE(value_slices.size() == 2);
    CHECK(close(value_slices[0].value(), Complex(0.0, 0.0)));
    CHECK(close(value_slices[1].value(), Complex(2.5, 0.0)));

    const auto jet_slices = holoball::slice_sums(f, Jet::identity(Complex(0.5, 0.0), 1));
    CHECK(close(jet_slices[1].coeff(0), Complex(2.5, 0.0)));
    CHECK(close(jet_slices[1].coeff(1), Complex(1.0, 0.0)));
}

TEST_CASE("line restrictions expand derivatives along a line", "[series2d]") {
    // f = z1^2 restricted to z1 = 2 v gives 4 v^2; its first z1-derivative
    // over 1! restricted to the line gives 4 v.
    const TaylorSeries2 f = TaylorSeries2::monomial(2, 0, 2);
    const auto a0 = holoball::line_restriction_jets(f, Complex(2.0, 0.0), 0);
    REQUIRE(a0.size() == 3);
    CHECK(close(a0[0], Complex(0.0, 0.0)));
    CHECK(close(a0[1], Complex(0.0, 0.0)));
    CHECK(close(a0[2], Complex(4.0, 0.0)));
    const auto a1 = holoball::line_restriction_jets(f, Complex(2.0, 0.0), 1);
    CHECK(close(a1[1], Complex(4.0, 0.0)));
    CHECK(close(a1[0], Complex(0.0, 0.0)));
    CHECK(close(a1[2], Complex(0.0, 0.0)));
    const auto a2 = holoball::line_restriction_jets(f, Complex(2.0, 0.0), 2);
    CHECK(close(a2[0], Complex(1.0, 0.0)));
}

TEST_CASE("axis coefficients read rows and columns of the triangle", "[series2d]") {
    const TaylorSeries2 f =
        holoball::build_series(3, {{1, 1, Complex(1.0, 0.0)}, {3, 0, Complex(1.0, 0.0)}});
    const auto row1 = holoball::axis_coefficients(f, Axis::z1_zero, 1);
    REQUIRE(row1.size() == 4);
    CHECK(close(row1[1], Complex(1.0, 0.0))); // a_{1,1}
    CHECK(close(row1[0], Complex(0.0, 0.0)));
    const auto col0 = holoball::axis_coefficients(f, Axis::z2_zero, 0);
    CHECK(close(col0[3], Complex(1.0, 0.0))); // a_{3,0}
    CHECK(close(col0[1], Complex(0.0, 0.0)));
}

TEST_CASE("tail bounds match the closed form of the weighted geometric sum", "[series2d]") {
    CHECK(holoball::coefficient_tail_bound(1.0, 0.5, 0) == Catch::Approx(4.0));
    CHECK(holoball::coefficient_tail_bound(2.0, 0.5, 1) == Catch::Approx(6.0));
    CHECK_THROWS_AS(holoball::coefficient_tail_bound(1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(holoball::coefficient_tail_bound(-1.0, 0.5, 0), std::invalid_argument);
}
