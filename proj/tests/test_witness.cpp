#include <doctest.h>

#include <cmath>

#include "cheese/verify.hpp"

using namespace cheese;

TEST_CASE("witness separates the origin from a far point") {
    CheeseConfig cfg = build_regular_cheese(1.0, 8);
    auto w = regularity_witness({0.0, 0.0}, {{0.9, 0.0}}, cfg);

    // first host in the enumeration already works: (0, 0) radius 1/2
    CHECK(w.host.index == 1);
    CHECK(w.host.cls == DiscClass::Interior);
    CHECK(w.epsilon == 0.03125);
    CHECK(w.start == 130.0);

    CHECK(std::isfinite(w.log_lower_z0));
    // at this start level every factor bound on B underflows doubles
    CHECK(w.upper_saturated);
    CHECK(std::isinf(w.log_upper_B));
    CHECK(w.log_upper_B < 0.0);
    CHECK(w.log_gap < -50.0);
}

TEST_CASE("witness with an empty target set") {
    CheeseConfig cfg = build_regular_cheese(1.0, 8);
    auto w = regularity_witness({0.0, 0.0}, {}, cfg);
    CHECK(std::isinf(w.log_gap));
    CHECK(w.log_gap < 0.0);
    CHECK_FALSE(w.upper_saturated);
    CHECK(std::isfinite(w.log_lower_z0));
}

TEST_CASE("witness picks edge and corner hosts for boundary points") {
    CheeseConfig cfg = build_regular_cheese(1.0, 8);

    auto edge = regularity_witness({0.0, 1.0}, {{0.5, 0.25}}, cfg);
    CHECK(edge.host.index == 2);
    CHECK(edge.host.cls == DiscClass::Edge);
    CHECK(edge.epsilon == 0.015625);
    CHECK(edge.log_gap < -50.0);

    auto corner = regularity_witness({1.0, 1.0}, {{0.0, 0.0}}, cfg);
    CHECK(corner.host.index == 6);
    CHECK(corner.host.cls == DiscClass::Corner);
    CHECK(corner.epsilon == 0.00390625);
    CHECK(std::isfinite(corner.log_lower_z0));
    CHECK(corner.log_gap < -50.0);
}

TEST_CASE("witness rejects malformed inputs") {
    CheeseConfig cfg = build_regular_cheese(1.0, 8);

    CHECK_THROWS_AS(regularity_witness({0.0, 0.0}, {{0.0, 0.0}}, cfg),
                    DomainError); // target coincides with z0
    CHECK_THROWS_AS(regularity_witness({2.0, 0.0}, {}, cfg),
                    DomainError); // z0 outside the square
    CHECK_THROWS_AS(regularity_witness({0.0, 0.0}, {{1.5, 0.0}}, cfg),
                    DomainError); // target outside the square

    CheeseConfig holed = cfg;
    holed.deletions.push_back(
        {{{0.0, 0.0}, 0.01}, Provenance{Provenance::Layer::Provider, 1, 0}});
    CHECK_THROWS_AS(regularity_witness({0.0, 0.0}, {{0.9, 0.0}}, holed),
                    DomainError); // z0 in a deleted disc
    CHECK_THROWS_AS(regularity_witness({0.25, 0.0}, {{0.0, 0.005}}, holed),
                    DomainError); // target in a deleted disc
}

TEST_CASE("witness search exhausts when no rational disc can separate") {
    CheeseConfig cfg = build_regular_cheese(1.0, 8);
    // separating these needs a disc boundary threaded between two points
    // 1.4e-6 apart near the corner; no such radius exists early in the scan
    CHECK_THROWS_AS(regularity_witness({0.999999, 0.999999},
                                       {{0.999998, 0.999998}}, cfg, 200),
                    SearchExhausted);
}
