#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "cheese/rational.hpp"

namespace cheese {

using Complex = std::complex<double>;

/// Closed disc in the plane.
struct Disc {
    Complex center{0.0, 0.0};
    double radius = 0.0;
};

/// Axis-aligned closed square given by center and half side length.
struct Square {
    Complex center{0.0, 0.0};
    double half_width = 1.0;
};

/// The base square Q = [-1,1] x [-1,1].
inline Square unit_square() { return Square{{0.0, 0.0}, 1.0}; }

/// The four corners of a square, counterclockwise from the bottom-left.
std::array<Complex, 4> corners(const Square& sq);

/// Admissible host-disc classes: strictly interior, centered on an open edge,
/// or centered at a corner.
enum class DiscClass { Interior, Edge, Corner };

const char* to_string(DiscClass c);

/// Disc with exact rational center and radius, as produced by the enumeration.
struct RatDisc {
    Rational x;
    Rational y;
    Rational radius;

    [[nodiscard]] Disc disc() const {
        return Disc{{x.to_double(), y.to_double()}, radius.to_double()};
    }
};

/// Exact admissibility test against Q. Interior: radius < dist(center, bdQ).
/// Edge: center on bdQ off the corners and radius < dist(center, corner set).
/// Corner: center a corner and radius < 1. Everything else is inadmissible.
std::optional<DiscClass> classify_disc(const RatDisc& d);

/// Exact distance from an Interior-class disc to the boundary of Q.
Rational interior_margin(const RatDisc& d);

/// Exact distance from an Edge-class disc center to the nearest corner, minus
/// the radius is not taken here; returns dist(center, K). Center must lie on
/// an edge so the nearest corner is axis-aligned and the distance rational.
Rational edge_corner_distance(const RatDisc& d);

/// Euclidean distance from a point to the boundary curve of a square.
double point_to_square_boundary(Complex z, const Square& sq);

/// Euclidean distance from a point to the solid (filled) square.
double point_to_solid_square(Complex z, const Square& sq);

/// Distance from the closed disc to the boundary of sq; 0 if they meet.
double dist_to_square_boundary(const Disc& d, const Square& sq);

/// Distance from the closed disc to the cross {Re z = Re a} union {Im z = Im a};
/// 0 if the disc meets the cross.
double dist_to_cross(const Disc& d, Complex a);

/// True when the closed disc intersects the open square.
bool disc_meets_interior(const Disc& d, const Square& sq);

/// Budget reference set: the boundary of a square, or the cross through a point.
struct BoundaryRef { Square sq; };
struct CrossRef { Complex a; };
using BudgetRef = std::variant<BoundaryRef, CrossRef>;

/// Sum of radius / dist(disc, ref)^2 over the discs. Returns +infinity as soon
/// as any disc touches the reference set. Deterministic summation order.
double budget_sum(const std::vector<Disc>& discs, const BudgetRef& ref);

/// Signed rational sequence 0, 1, -1, 1/2, -1/2, 2, -2, 1/3, -1/3, ...
/// (Calkin-Wilf order with alternating signs); hits every rational once.
Rational signed_rational_at(std::int64_t i);

/// Positive rational sequence 1, 1/2, 2, 1/3, 3/2, 2/3, 3, ... (Calkin-Wilf).
Rational positive_rational_at(std::int64_t i);

/// One entry of the admissible-disc enumeration.
struct AdmissibleDisc {
    std::int64_t index = 0; // 1-based position in the filtered enumeration
    RatDisc rat;
    DiscClass cls = DiscClass::Interior;

    [[nodiscard]] Disc disc() const { return rat.disc(); }
};

/// Deterministic dense enumeration of admissible discs. Candidate triples
/// (x, y, radius) are scanned diagonally by total sequence index and filtered
/// through classify_disc, so any prefix is stable as count grows.
/// Throws ResourceError if count discs are not found within scan_cap candidates.
std::vector<AdmissibleDisc> enumerate_admissible_discs(std::int64_t count,
                                                       std::int64_t scan_cap = 50'000'000);

/// Streaming form of the enumeration; yields admissible discs in order until
/// visit returns false. Same order as enumerate_admissible_discs.
void scan_admissible_discs(std::int64_t scan_cap,
                           const std::function<bool(const AdmissibleDisc&)>& visit);

} // namespace cheese
