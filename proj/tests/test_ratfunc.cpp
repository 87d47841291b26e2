#include <doctest.h>

#include <cmath>
#include <complex>

#include "cheese/ratfunc.hpp"

using namespace cheese;

TEST_CASE("level parameters carry the pinned scales") {
    auto p = LevelParams::make(3);
    CHECK(p.N == 192);
    CHECK(p.shrink == 1.0 - std::ldexp(1.0, -6));
    CHECK(p.delta == doctest::Approx(1.0 / 1728.0).epsilon(1e-15));
    CHECK(p.disc_radius == doctest::Approx(1.0 / (243.0 * 4096.0)).epsilon(1e-15));
    CHECK(p.delta_condition());
    for (int n = 2; n <= 8; ++n) CHECK(LevelParams::make(n).delta_condition());

    CHECK_THROWS_AS(LevelParams::make(1), DomainError);
    CHECK_THROWS_AS(LevelParams::make(30), ResourceError);

    CHECK(std::abs(p.pole(0)) == doctest::Approx(p.shrink));
    CHECK(std::arg(p.pole(0)) == doctest::Approx(M_PI / 192.0));
    CHECK(p.nearest_pole_index(p.pole(77)) == 77);
    CHECK(p.nearest_pole_index(p.pole(191)) == 191);

    // smallest center-to-center gap across the ring
    CHECK(std::abs(p.pole(1) - p.pole(0)) ==
          doctest::Approx(0.03221215913964585).epsilon(1e-14));
}

TEST_CASE("ring reciprocal values and pole handling") {
    CHECK(ring_reciprocal(8, {0.0, 0.0}) == Complex{1.0, 0.0});
    CHECK_THROWS_AS(ring_reciprocal(8, {1.0, 0.0}), PoleError);
    CHECK_THROWS_AS(ring_reciprocal(192, std::polar(1.0, M_PI / 96.0)), PoleError);

    // 1 - h = -z^N h, so |1-h| = |z|^N |h| exactly
    const Complex h = ring_reciprocal(8, {0.9, 0.0});
    const double zn = std::pow(0.9, 8);
    CHECK(std::abs(1.0 - h) == doctest::Approx(zn * std::abs(h)).epsilon(1e-15));
    CHECK(std::abs(1.0 - h) <= 2.0 * zn);

    // decay regime |z|^N >= 2
    const Complex hd = ring_reciprocal(8, {1.2, 0.0});
    CHECK(std::abs(hd) <= 2.0 * std::pow(1.2, -8.0));

    // log form agrees with the direct form at moderate N
    auto hl = ring_reciprocal_log(192, {0.7, 0.4});
    const Complex hv = ring_reciprocal(192, {0.7, 0.4});
    CHECK(hl.to_complex().real() == doctest::Approx(hv.real()).epsilon(1e-12));
    CHECK(hl.to_complex().imag() == doctest::Approx(hv.imag()).epsilon(1e-12));

    // overflowing power: direct form rounds to the limit 0, log form stays exact
    const long long bigN = 1LL << 20;
    CHECK(ring_reciprocal(bigN, {2.0, 0.0}) == Complex{0.0, 0.0});
    auto big = ring_reciprocal_log(bigN, {2.0, 0.0});
    CHECK(big.log_mag ==
          doctest::Approx(-double(bigN) * std::log(2.0)).epsilon(1e-12));
    CHECK_FALSE(big.is_zero());
}

TEST_CASE("level factor values at z = 1 match the frozen constants") {
    auto p3 = LevelParams::make(3);
    const double g3 = std::abs(level_factor(p3, {1.0, 0.0}));
    CHECK(g3 == doctest::Approx(0.04636728140844947).epsilon(1e-14));
    // and it sits under the decay bound 2 |w|^-N with |w| = 1/shrink
    CHECK(g3 <= 0.09724347855205878 * (1.0 + 1e-14));
    CHECK(2.0 * std::pow(p3.shrink, 192.0) ==
          doctest::Approx(0.09724347855205878).epsilon(1e-12));

    auto p4 = LevelParams::make(4);
    auto p5 = LevelParams::make(5);
    auto p6 = LevelParams::make(6);
    CHECK(std::abs(level_factor(p4, {1.0, 0.0})) ==
          doctest::Approx(0.017848380753315133).epsilon(1e-13));
    CHECK(std::abs(level_factor(p5, {1.0, 0.0})) ==
          doctest::Approx(0.006676629300154419).epsilon(1e-13));
    CHECK(std::abs(level_factor(p6, {1.0, 0.0})) ==
          doctest::Approx(0.0024708169955431685).epsilon(1e-13));

    auto lf = level_factor_log(p4, {1.0, 0.0});
    CHECK(std::exp(lf.log_mag) ==
          doctest::Approx(0.017848380753315133).epsilon(1e-12));
}

TEST_CASE("partial products in log form") {
    auto f = ProductFunction::make(4, 6);
    CHECK(f.log_prefactor == doctest::Approx(-4.0 * std::lgamma(5.0)).epsilon(1e-15));
    auto v = partial_product(f, {1.0, 0.0});
    CHECK(std::exp(v.log_mag) ==
          doctest::Approx(8.874659499589702e-13).epsilon(1e-12));

    // empty product is exactly the prefactor
    auto e = ProductFunction::make(4, 3);
    auto ev = partial_product(e, {0.3, 0.2});
    CHECK(ev.log_mag == doctest::Approx(f.log_prefactor).epsilon(1e-15));
    CHECK(ev.phase == 0.0);

    CHECK_THROWS_AS(ProductFunction::make(1, 6), DomainError);

    // rejection of points inside a deleted pole disc
    auto p4 = LevelParams::make(4);
    const Complex inside = p4.pole(10);
    CHECK_THROWS_AS(partial_product(ProductFunction::make(4, 4), inside, true),
                    DomainError);
}

TEST_CASE("certified limit enclosures") {
    auto f = ProductFunction::make(4, 8);
    auto lv = limit_product(f, {0.0, 0.0});
    CHECK(std::exp(lv.partial.log_mag) ==
          doctest::Approx(3.014081790123466e-06).epsilon(1e-13));
    // stays a valid lower bound for prod_{r>8}(1-(r+1)^-4) = 0.99961341459...
    CHECK(std::exp(lv.tail_log_lo) <= 0.9996134145958040);
    CHECK(std::exp(lv.tail_log_lo) ==
          doctest::Approx(0.9996134145958039).epsilon(5e-10));
    CHECK(lv.tail_log_lo < lv.tail_log_hi);
    CHECK(lv.log_lower < lv.log_upper);
    CHECK(std::isfinite(lv.log_lower));

    auto lv2 = limit_product(f, {0.5, 0.25});
    CHECK(lv2.log_lower < lv2.log_upper);
    CHECK(std::isfinite(lv2.log_lower));

    CHECK_THROWS_AS(limit_product(f, {1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(limit_product(f, {1.5, 0.0}), DomainError);

    // tail-only form with a huge real start
    auto tail = limit_tail_real(130.0, {0.5, 0.0});
    CHECK(tail.partial.log_mag == 0.0);
    CHECK(tail.tail_log_lo <= 0.0);
    CHECK(tail.tail_log_hi >= tail.tail_log_lo);
    CHECK(std::isfinite(tail.tail_log_lo));
    CHECK_THROWS_AS(limit_tail_real(1.5, {0.5, 0.0}), DomainError);
    CHECK_THROWS_AS(limit_tail_real(130.0, {1.0, 0.0}), DomainError);
}

TEST_CASE("tail interval and per-factor bounds") {
    double lo = 0.0, hi = 0.0;
    tail_interval_log(9.0, &lo, &hi);
    // sum_{k>=10} k^-4 = 3.8665021738e-4 pins both ends up to the
    // directed remainder slack, which must point outward on each side
    CHECK(lo < -3.8665021738e-4);
    CHECK(lo > -3.8667e-4);
    CHECK(hi < 3.8666e-4);
    CHECK(hi > 3.8664e-4);
    CHECK(lo + hi < 0.0); // |log(1-x)| > log(1+x)

    double lo2 = 0.0, hi2 = 0.0;
    tail_interval_log(1e300, &lo2, &hi2);
    CHECK(lo2 <= 0.0);
    CHECK(hi2 >= 0.0);
    CHECK(std::abs(lo2) < 1e-200);
    CHECK(std::abs(hi2) < 1e-200);

    CHECK(std::isinf(tail_factor_bound(4.0, 1.5)));
    CHECK(std::isinf(tail_factor_bound(4.0, 1.0)));
    const double b = tail_factor_bound(4.0, 0.99);
    CHECK(b == doctest::Approx(1.857e-3).epsilon(2e-2));
    const double tiny = tail_factor_bound(4.0, 0.5);
    CHECK(tiny >= 0.0);
    CHECK(tiny < 1e-300);
}
