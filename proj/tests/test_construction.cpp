#include <doctest.h>

#include <cmath>

#include "cheese/construction.hpp"

using namespace cheese;

TEST_CASE("start index selection hits the frozen table") {
    CHECK(select_start_index(1.0) == 4);
    CHECK(select_start_index(2.0) == 4);
    CHECK(select_start_index(16.0) == 4);
    CHECK(select_start_index(0.1) == 22);
    CHECK(select_start_index(1.0 / 16.0) == 34);
    CHECK(select_start_index(0.015625) == 130);
    CHECK_THROWS_AS(select_start_index(1e-20), ResourceError);

    CHECK(select_start_real(1.0) == 4.0);
    CHECK(select_start_real(0.015625) == 130.0);
    const double huge = select_start_real(1e-20);
    CHECK(huge >= 2e20);
    CHECK(huge < 2.01e20);
}

TEST_CASE("truncation tail brackets the true series") {
    // sum_{r > 6} r^-2 = pi^2/6 - sum_{1..6} = 0.1535451779593375...
    const double t6 = truncation_tail(6.0);
    CHECK(t6 > 0.1535451779593375);
    CHECK(t6 < 0.1540);
    CHECK(truncation_tail(7.0) < t6);

    const double big = truncation_tail(1e7);
    CHECK(big >= 1.0 / 1e7);
    CHECK(big < 1.1e-7);

    CHECK(truncation_tail(1e300) > 0.0);
    CHECK(truncation_tail(1e300) < 1e-299);
}

TEST_CASE("level family budgets match the frozen sums") {
    const double frozen[] = {0.037972791,  0.01572834,   0.0080136614,
                             0.0046316515, 0.0029157755, 0.0019531799};
    for (int n = 3; n <= 8; ++n) {
        CAPTURE(n);
        auto fam = build_level_family(n);
        CHECK(fam.params.n == n);
        CHECK(static_cast<long long>(fam.discs.size()) == fam.params.N);
        const double s = budget_sum(fam.discs, CrossRef{{0.0, 0.0}});
        CHECK(s == doctest::Approx(frozen[n - 3]).epsilon(1e-6));
        CHECK(s < 1.0 / (double(n) * double(n)));
    }
    CHECK_THROWS_AS(build_level_family(8, 1000), ResourceError);
}

TEST_CASE("unit cheese accounting") {
    auto u = build_unit_cheese(1.0, 8);
    CHECK(u.m == 4);
    CHECK(u.n_max == 8);
    REQUIRE(u.families.size() == 5);
    CHECK(u.disc_count() == 1024 + 5120 + 24576 + 114688 + 524288);
    CHECK(u.realized + u.tail < 1.0);
    CHECK(u.all_discs().size() == static_cast<std::size_t>(u.disc_count()));

    CHECK_THROWS_AS(build_unit_cheese(1.0, 3), BudgetError);
}

TEST_CASE("transplant scales the budget law exactly") {
    auto u = build_unit_cheese(1.0, 6);
    const Disc target{{0.25, 0.25}, 0.125};
    auto images = transplant(u, target);
    CHECK(images.size() == static_cast<std::size_t>(u.disc_count()));
    const double scaled = budget_sum(images, CrossRef{target.center});
    CHECK(scaled == doctest::Approx(u.realized / 0.125).epsilon(1e-12));

    CHECK_THROWS_AS(transplant(u, Disc{{0.0, 0.0}, 0.0}), DegenerateError);
}

TEST_CASE("per-host allowances in exact arithmetic") {
    auto discs = enumerate_admissible_discs(7);
    // interior host 1 at (0,0,1/2): margin 1/2, factor 1/4, scale 2^-3
    CHECK(epsilon_for_index(discs[0], 64.0) == 2.0);
    // edge host 3 at (1,0,1/2): corner distance 1, factor (1-1/2)^2 = 1/4
    CHECK(epsilon_for_index(discs[2], 64.0) == 0.5);
    // corner host 6 at (1,1,1/2): factor 1, scale 2^-8
    CHECK(epsilon_for_index(discs[5], 64.0) == 0.25);

    AdmissibleDisc degenerate{1, RatDisc{{0, 1}, {0, 1}, {1, 1}},
                              DiscClass::Interior};
    CHECK_THROWS_AS(epsilon_for_index(degenerate, 1.0), DegenerateError);
}

TEST_CASE("budget-only boundary layer") {
    CheeseConfig cfg = build_regular_cheese(1.0, 4);
    CHECK(cfg.C0 == 1.0);
    CHECK(cfg.transplants.size() == 4);
    CHECK(cfg.deletions.empty());
    double total = 0.0;
    for (const auto& t : cfg.transplants) {
        CHECK(t.levels_lo > t.levels_hi); // nothing materialized at C0 = 1
        CHECK(t.retained == 0);
        CHECK(t.charged < t.epsilon);
        CHECK(t.start > 100.0);
        total += t.charged;
    }
    CHECK(total == doctest::Approx(cfg.ledger.transplant_charged).epsilon(1e-15));
    CHECK(total < 1.0);
    CHECK(cfg.ledger.transplant_boundary == 0.0);
}

TEST_CASE("materialized interior host") {
    BuildCaps caps;
    caps.n_cap = 5;
    CheeseConfig cfg = build_regular_cheese(64.0, 1, caps);
    REQUIRE(cfg.transplants.size() == 1);
    const auto& t = cfg.transplants[0];
    CHECK(t.epsilon == 2.0);
    CHECK(t.unit_epsilon == 1.0);
    CHECK(t.start == 4.0);
    CHECK(t.levels_lo == 4);
    CHECK(t.levels_hi == 5);
    CHECK(t.retained == 1024 + 5120);
    CHECK(t.discarded == 0);
    CHECK(cfg.deletions.size() == static_cast<std::size_t>(t.retained));
    CHECK(t.charged < t.epsilon);
    // realized carries all images against the cross at the host center
    CHECK(t.realized ==
          doctest::Approx((0.01572834 + 0.0080136614) / 0.5).epsilon(1e-6));
    for (const auto& d : cfg.deletions) {
        CHECK(d.origin.layer == Provenance::Layer::Transplant);
        CHECK(d.origin.host == 1);
        CHECK((d.origin.sub == 4 || d.origin.sub == 5));
    }
}

TEST_CASE("materialized edge host discards the outward half") {
    BuildCaps caps;
    caps.n_cap = 4;
    CheeseConfig cfg = build_regular_cheese(512.0, 3, caps);
    REQUIRE(cfg.transplants.size() == 3);
    // host 2 sits at (0, 1) on the top edge; half its level-4 ring leaves Q
    const auto& t = cfg.transplants[1];
    CHECK(t.host.index == 2);
    CHECK(t.host.cls == DiscClass::Edge);
    CHECK(t.levels_lo == 4);
    CHECK(t.levels_hi == 4);
    CHECK(t.retained == 512);
    CHECK(t.discarded == 512);
    // realized still counts every image, kept or not
    CHECK(t.realized > 0.0);
    CHECK(t.charged < t.epsilon);
}

TEST_CASE("two-layer assembly with the stub provider") {
    const double C = 4.0 * M_PI;
    CheeseConfig cfg = assemble_cheese(C, 8, 3, stub_provider(1), 1);
    CHECK(cfg.C == doctest::Approx(C));
    CHECK(cfg.C0 == doctest::Approx(1.0));
    CHECK(cfg.n_levels == 3);

    std::size_t provider_discs = 0;
    for (const auto& d : cfg.deletions)
        if (d.origin.layer == Provenance::Layer::Provider) {
            ++provider_discs;
            CHECK(d.origin.host >= 1);
            CHECK(d.origin.host <= 3);
            const double scale = level_scale(static_cast<int>(d.origin.host));
            CHECK(std::abs(d.disc.center.real()) + d.disc.radius <= scale);
            CHECK(std::abs(d.disc.center.imag()) + d.disc.radius <= scale);
        }
    CHECK(provider_discs == 9); // three discs per level
    CHECK(cfg.ledger.provider_length > 0.0);
    CHECK(cfg.ledger.combined_integral <= C / 2.0 + 2.0 * M_PI * cfg.C0);

    CheeseConfig none = assemble_cheese(C, 4, 3, empty_provider(), 1);
    CHECK(none.deletions.empty());
    CHECK(none.ledger.provider_length == 0.0);

    CHECK(level_scale(3) == doctest::Approx(0.75));
    CHECK(length_budget(1, C) == doctest::Approx(M_PI / 4.0));
}
