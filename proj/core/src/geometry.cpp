#include "cheese/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

namespace cheese {

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        size_t used = 0;
        const std::int64_t num = std::stoll(text.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? text.size() : slash))
            throw DomainError("trailing characters in rational: " + text);
        if (slash == std::string::npos) return Rational(num);
        const std::int64_t den = std::stoll(text.substr(slash + 1), &used);
        if (used != text.size() - slash - 1)
            throw DomainError("trailing characters in rational: " + text);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw DomainError("malformed rational: " + text);
    } catch (const std::out_of_range&) {
        throw DomainError("rational out of range: " + text);
    }
}

std::array<Complex, 4> corners(const Square& sq) {
    const double h = sq.half_width;
    const Complex c = sq.center;
    return {c + Complex{-h, -h}, c + Complex{h, -h}, c + Complex{h, h}, c + Complex{-h, h}};
}

const char* to_string(DiscClass c) {
    switch (c) {
        case DiscClass::Interior: return "interior";
        case DiscClass::Edge: return "edge";
        case DiscClass::Corner: return "corner";
    }
    return "?";
}

namespace {

const Rational kOne{1};

Rational rat_max(const Rational& a, const Rational& b) { return a < b ? b : a; }

} // namespace

std::optional<DiscClass> classify_disc(const RatDisc& d) {
    if (d.radius <= Rational(0)) return std::nullopt;
    const Rational ax = d.x.abs();
    const Rational ay = d.y.abs();
    if (ax > kOne || ay > kOne) return std::nullopt; // center outside closed Q

    const bool on_x_edge = ax == kOne;
    const bool on_y_edge = ay == kOne;
    if (!on_x_edge && !on_y_edge) {
        // strictly interior: radius < Euclidean distance to bdQ, which is
        // 1 - max(|x|,|y|) because the nearest boundary point is axis-aligned
        if (d.radius < kOne - rat_max(ax, ay)) return DiscClass::Interior;
        return std::nullopt;
    }
    if (on_x_edge && on_y_edge) {
        if (d.radius < kOne) return DiscClass::Corner;
        return std::nullopt;
    }
    // on an open edge: nearest corners lie along that edge, so the distance to
    // the corner set is 1 - |coordinate along the edge| (exactly rational)
    const Rational along = on_x_edge ? ay : ax;
    if (d.radius < kOne - along) return DiscClass::Edge;
    return std::nullopt;
}

Rational interior_margin(const RatDisc& d) {
    return kOne - rat_max(d.x.abs(), d.y.abs()) - d.radius;
}

Rational edge_corner_distance(const RatDisc& d) {
    const Rational ax = d.x.abs();
    const Rational ay = d.y.abs();
    const Rational along = (ax == kOne) ? ay : ax;
    return kOne - along;
}

double point_to_square_boundary(Complex z, const Square& sq) {
    const double dx = std::abs(z.real() - sq.center.real());
    const double dy = std::abs(z.imag() - sq.center.imag());
    const double h = sq.half_width;
    if (dx <= h && dy <= h) return h - std::max(dx, dy); // inside: nearest edge
    return std::hypot(std::max(dx - h, 0.0), std::max(dy - h, 0.0));
}

double point_to_solid_square(Complex z, const Square& sq) {
    const double dx = std::abs(z.real() - sq.center.real());
    const double dy = std::abs(z.imag() - sq.center.imag());
    const double h = sq.half_width;
    return std::hypot(std::max(dx - h, 0.0), std::max(dy - h, 0.0));
}

double dist_to_square_boundary(const Disc& d, const Square& sq) {
    return std::max(0.0, point_to_square_boundary(d.center, sq) - d.radius);
}

double dist_to_cross(const Disc& d, Complex a) {
    const double s = std::min(std::abs(d.center.real() - a.real()),
                              std::abs(d.center.imag() - a.imag()));
    return std::max(0.0, s - d.radius);
}

bool disc_meets_interior(const Disc& d, const Square& sq) {
    return point_to_solid_square(d.center, sq) < d.radius;
}

double budget_sum(const std::vector<Disc>& discs, const BudgetRef& ref) {
    double total = 0.0;
    for (const Disc& d : discs) {
        const double s = std::visit(
            [&](const auto& r) {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, BoundaryRef>)
                    return dist_to_square_boundary(d, r.sq);
                else
                    return dist_to_cross(d, r.a);
            },
            ref);
        if (s == 0.0) return std::numeric_limits<double>::infinity();
        total += d.radius / (s * s);
    }
    return total;
}

namespace {

// Calkin-Wilf sequence of positive rationals, extended on demand.
// q_1 = 1, q_{k+1} = 1/(2*floor(q_k) - q_k + 1); every positive rational
// appears exactly once. Guarded for concurrent extension.
class CalkinWilf {
public:
    Rational at(std::int64_t i) {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<std::int64_t>(seq_.size()) <= i) {
            const Rational& q = seq_.back();
            const std::int64_t fl = q.num / q.den; // q > 0 so this truncates down
            seq_.push_back(Rational(q.den, 2 * fl * q.den - q.num + q.den));
        }
        return seq_[i];
    }

private:
    std::mutex mu_;
    std::vector<Rational> seq_{Rational(1)};
};

CalkinWilf& cw() {
    static CalkinWilf instance;
    return instance;
}

} // namespace

Rational positive_rational_at(std::int64_t i) { return cw().at(i); }

Rational signed_rational_at(std::int64_t i) {
    if (i == 0) return Rational(0);
    const Rational q = cw().at((i - 1) / 2);
    return (i % 2 == 1) ? q : -q;
}

void scan_admissible_discs(std::int64_t scan_cap,
                           const std::function<bool(const AdmissibleDisc&)>& visit) {
    std::int64_t seen = 0;
    std::int64_t accepted = 0;
    for (std::int64_t total = 0;; ++total) {
        for (std::int64_t ix = 0; ix <= total; ++ix) {
            for (std::int64_t iy = 0; iy + ix <= total; ++iy) {
                if (++seen > scan_cap) return;
                const std::int64_t ir = total - ix - iy;
                RatDisc cand{signed_rational_at(ix), signed_rational_at(iy),
                             positive_rational_at(ir)};
                const auto cls = classify_disc(cand);
                if (!cls) continue;
                AdmissibleDisc entry{++accepted, cand, *cls};
                if (!visit(entry)) return;
            }
        }
    }
}

std::vector<AdmissibleDisc> enumerate_admissible_discs(std::int64_t count, std::int64_t scan_cap) {
    std::vector<AdmissibleDisc> out;
    out.reserve(static_cast<std::size_t>(count));
    scan_admissible_discs(scan_cap, [&](const AdmissibleDisc& d) {
        out.push_back(d);
        return static_cast<std::int64_t>(out.size()) < count;
    });
    if (static_cast<std::int64_t>(out.size()) < count)
        throw ResourceError("admissible-disc scan cap reached before requested count");
    return out;
}

} // namespace cheese
