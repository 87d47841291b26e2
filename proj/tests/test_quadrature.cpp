#include <doctest.h>

#include <cmath>
#include <complex>

#include "cheese/verify.hpp"

using namespace cheese;

namespace {
constexpr double kTau = 2.0 * M_PI;
} // namespace

TEST_CASE("edge integration of entire functions vanishes") {
    for (int k = 0; k <= 3; ++k) {
        auto q = integrate_edges(
            [k](Complex z) { return std::pow(z, k); }, unit_square(), 1e-12);
        CHECK(q.converged);
        CHECK(std::abs(q.value) < 1e-11);
    }
}

TEST_CASE("Cauchy integrals inside and outside") {
    const Complex in{0.3, 0.2};
    auto qi = integrate_edges(
        [in](Complex z) { return 1.0 / (z - in); }, unit_square(), 1e-12);
    CHECK(qi.converged);
    CHECK(std::abs(qi.value - Complex{0.0, kTau}) < 1e-10);
    CHECK(qi.panels > 4);

    const Complex out{1.5, 0.0};
    auto qo = integrate_edges(
        [out](Complex z) { return 1.0 / (z - out); }, unit_square(), 1e-12);
    CHECK(std::abs(qo.value) < 1e-11);

    // repeat runs are bit-deterministic
    auto qi2 = integrate_edges(
        [in](Complex z) { return 1.0 / (z - in); }, unit_square(), 1e-12);
    CHECK(qi.value == qi2.value);
    CHECK(qi.panels == qi2.panels);

    CHECK_THROWS_AS(integrate_edges([](Complex) { return Complex{}; },
                                    unit_square(), 0.0),
                    DomainError);
}

TEST_CASE("contour pairing against simple closed forms") {
    // f = z^2, g = 1/(z-p): integral of 2z/(z-p) = 2*pi*i * 2p
    const Complex p{0.25, -0.4};
    RationalExpr f;
    f.num = Polynomial({{}, {}, Complex{1.0, 0.0}});
    auto g = RationalExpr::simple_pole(p, {1.0, 0.0});
    auto q = contour_integral_boundary(f, g, 1e-11);
    const Complex want = Complex{0.0, kTau} * 2.0 * p;
    CHECK(std::abs(q.value - want) < 1e-9);

    // pole exactly on the contour is rejected up front
    auto bad = RationalExpr::simple_pole({1.0, 0.0}, {1.0, 0.0});
    CHECK_THROWS_AS(contour_integral_boundary(f, bad, 1e-10), PoleOnContourError);
}

TEST_CASE("residue oracle closed forms") {
    const Square q = unit_square();

    // two simple poles both inside: the pairing cancels exactly
    PoleSum f1{{0.0, 0.0}, {{{1.0, 0.0}, {0.5, 0.0}}}};
    PoleSum g1{{0.0, 0.0}, {{{1.0, 0.0}, {-0.5, 0.1}}}};
    CHECK(std::abs(residue_derivation_value(f1, g1, q)) < 1e-15);

    // f pole inside, g pole outside: 2*pi*i * ab/(p-q)^2 survives
    const Complex a{0.5, 0.0}, b{2.0, 0.0};
    PoleSum f2{{0.0, 0.0}, {{{1.0, 0.0}, a}}};
    PoleSum g2{{0.0, 0.0}, {{{1.0, 0.0}, b}}};
    const Complex want = Complex{0.0, kTau} / ((a - b) * (a - b));
    CHECK(std::abs(residue_derivation_value(f2, g2, q) - want) < 1e-14);

    // coincident poles form a triple pole with zero residue
    PoleSum f3{{0.0, 0.0}, {{{1.0, 0.0}, a}}};
    PoleSum g3{{0.0, 0.0}, {{{1.0, 0.0}, a}}};
    CHECK(std::abs(residue_derivation_value(f3, g3, q)) == 0.0);

    // constants in either factor contribute nothing
    PoleSum f4{{3.0, -1.0}, {{{1.0, 0.0}, a}}};
    PoleSum g4{{-2.0, 0.5}, {{{1.0, 0.0}, b}}};
    CHECK(std::abs(residue_derivation_value(f4, g4, q) - want) < 1e-13);
}

TEST_CASE("partial fractions convert to polynomial quotients faithfully") {
    PoleSum s{{0.5, -0.25},
              {{{1.0, 1.0}, {0.3, 0.0}}, {{-2.0, 0.0}, {-0.1, 0.7}}}};
    auto e = to_ratexpr(s);
    for (Complex z : {Complex{0.9, 0.1}, Complex{-0.4, -0.8}, Complex{0.0, 0.0}}) {
        Complex direct = s.constant;
        for (const auto& t : s.terms) direct += t.coeff / (z - t.pole);
        CHECK(std::abs(e.eval(z) - direct) < 1e-12);
    }

    // quadrature agrees with the oracle on this explicit pair
    PoleSum f{{0.0, 0.0}, {{{1.0, 0.0}, {0.4, 0.3}}}};
    auto quad = contour_integral_boundary(to_ratexpr(f), e, 1e-11);
    auto oracle = residue_derivation_value(f, s);
    CHECK(std::abs(quad.value - oracle) < 1e-9);
}
