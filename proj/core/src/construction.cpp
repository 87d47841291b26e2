#include "cheese/construction.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace cheese {

LevelFamily build_level_family(int n, std::int64_t disc_cap) {
    LevelParams p = LevelParams::make(n);
    if (p.N > disc_cap) {
        std::ostringstream os;
        os << "level " << n << " has " << p.N << " discs, over the cap " << disc_cap;
        throw ResourceError(os.str());
    }
    LevelFamily fam{p, {}};
    fam.discs.reserve(static_cast<std::size_t>(p.N));
    for (long long k = 0; k < p.N; ++k)
        fam.discs.push_back({p.pole(k), p.disc_radius});
    return fam;
}

namespace {

// (m+1)!^4 > 2 (m+1)^6 2^(2(m+1)) + 2 (m+1)^2, all in the log domain
bool factorial_condition(double m) {
    double lhs = 4.0 * std::lgamma(m + 2.0);
    double a = std::log(2.0) + 6.0 * std::log(m + 1.0) + 2.0 * (m + 1.0) * std::log(2.0);
    double b = std::log(2.0) + 2.0 * std::log(m + 1.0);
    double rhs = std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
    return lhs > rhs;
}

} // namespace

std::int64_t select_start_index(double epsilon) {
    if (!(epsilon > 0.0))
        throw DomainError("start-index selection needs a positive budget");
    double t = 2.0 / epsilon + 1.0;
    if (!(t < 9.0e15))
        throw ResourceError("start index exceeds the integer range");
    std::int64_t m = static_cast<std::int64_t>(std::floor(t)) + 1;
    if (m < 2) m = 2;
    while (!factorial_condition(double(m))) ++m;
    return m;
}

double select_start_real(double epsilon) {
    if (!(epsilon > 0.0))
        throw DomainError("start-index selection needs a positive budget");
    double t = 2.0 / epsilon + 1.0;
    if (!std::isfinite(t))
        throw ResourceError("budget too small: start level not representable");
    double m;
    if (t < 9.0e15) {
        m = double(select_start_index(epsilon));
    } else {
        // past 9e15 the factorial condition holds with astronomical slack;
        // the upward guard keeps m > 2/epsilon + 1 strict after rounding
        m = std::ceil(t * (1.0 + 1e-9));
    }
    if (!std::isfinite(4.0 * std::lgamma(m + 2.0)))
        throw ResourceError("budget too small: start level prefactor overflows");
    return m;
}

double truncation_tail(double n_last) {
    if (!(n_last >= 1.0)) throw DomainError("truncation level must be at least 1");
    if (n_last > 1.0e6) {
        // sum_{r > n} r^-2 < 1/n, kept valid even when n_last lost its
        // trailing 1 to rounding: (1 + 1/n)/n covers sum_{r >= n} as well
        return (1.0 + 1.0 / n_last) / n_last;
    }
    double s = 0.0;
    for (double r = n_last + 1.0; r <= 1.0e6; r += 1.0) s += 1.0 / (r * r);
    s += 1.0e-6; // integral remainder past 10^6
    return s * (1.0 + 1e-12) + 1e-305;
}

std::int64_t UnitCheese::disc_count() const {
    std::int64_t total = 0;
    for (const auto& fam : families) total += static_cast<std::int64_t>(fam.discs.size());
    return total;
}

std::vector<Disc> UnitCheese::all_discs() const {
    std::vector<Disc> out;
    out.reserve(static_cast<std::size_t>(disc_count()));
    for (const auto& fam : families)
        out.insert(out.end(), fam.discs.begin(), fam.discs.end());
    return out;
}

UnitCheese build_unit_cheese(double epsilon, int n_max, std::int64_t disc_cap) {
    std::int64_t m = select_start_index(epsilon);
    if (n_max < m) {
        std::ostringstream os;
        os << "truncation level " << n_max << " is below the start index " << m;
        throw BudgetError(os.str());
    }
    UnitCheese u;
    u.epsilon = epsilon;
    u.m = m;
    u.n_max = n_max;
    std::int64_t total = 0;
    for (int r = static_cast<int>(m); r <= n_max; ++r) {
        LevelFamily fam = build_level_family(r, disc_cap);
        total += fam.params.N;
        if (total > disc_cap) throw ResourceError("unit cheese exceeds the disc cap");
        u.realized += budget_sum(fam.discs, CrossRef{Complex{0.0, 0.0}});
        u.families.push_back(std::move(fam));
    }
    u.tail = truncation_tail(double(n_max));
    if (!(u.realized + u.tail < epsilon)) {
        std::ostringstream os;
        os << "realized budget " << u.realized << " plus tail " << u.tail
           << " does not come in under " << epsilon;
        throw BudgetError(os.str());
    }
    return u;
}

std::vector<Disc> transplant(const UnitCheese& u, const Disc& target) {
    if (!(target.radius > 0.0))
        throw DegenerateError("transplant target needs a positive radius");
    std::vector<Disc> out;
    out.reserve(static_cast<std::size_t>(u.disc_count()));
    for (const auto& fam : u.families)
        for (const auto& d : fam.discs)
            out.push_back({target.center + target.radius * d.center,
                           target.radius * d.radius});
    return out;
}

double epsilon_for_index(const AdmissibleDisc& host, double C0) {
    if (!(C0 > 0.0)) throw DomainError("C0 must be positive");
    double factor = 1.0;
    switch (host.cls) {
        case DiscClass::Interior: {
            Rational mar = interior_margin(host.rat);
            if (!(Rational(0) < mar))
                throw DegenerateError("interior host touches the square boundary");
            factor = mar.to_double();
            factor *= factor;
            break;
        }
        case DiscClass::Edge: {
            Rational d = edge_corner_distance(host.rat) - host.rat.radius;
            if (!(Rational(0) < d))
                throw DegenerateError("edge host reaches a corner");
            factor = d.to_double();
            factor *= factor;
            break;
        }
        case DiscClass::Corner:
            factor = 1.0;
            break;
    }
    int l = static_cast<int>(std::min<std::int64_t>(host.index, std::int64_t(1) << 30));
    return std::ldexp(C0 * factor, -(l + 2));
}

CheeseConfig build_regular_cheese(double C0, std::int64_t L, const BuildCaps& caps) {
    if (!(C0 > 0.0)) throw DomainError("C0 must be positive");
    if (L < 0) throw DomainError("host count cannot be negative");
    CheeseConfig cfg;
    cfg.C0 = C0;
    cfg.L = L;
    cfg.caps = caps;
    auto hosts = enumerate_admissible_discs(L, caps.scan_cap);
    for (const auto& h : hosts) {
        TransplantRecord rec;
        rec.host = h;
        rec.epsilon = epsilon_for_index(h, C0);
        const double rl = h.rat.radius.to_double();
        rec.unit_epsilon = rec.epsilon * rl;
        rec.start = select_start_real(rec.unit_epsilon);
        if (rec.start <= double(caps.n_cap)) {
            UnitCheese u = build_unit_cheese(rec.unit_epsilon, caps.n_cap, caps.disc_cap);
            rec.levels_lo = static_cast<int>(u.m);
            rec.levels_hi = caps.n_cap;
            const Disc target = h.disc();
            std::vector<Disc> images = transplant(u, target);
            rec.realized = budget_sum(images, CrossRef{target.center});
            rec.charged = rec.realized + u.tail / rl;
            std::size_t idx = 0;
            for (const auto& fam : u.families)
                for (std::size_t k = 0; k < fam.discs.size(); ++k, ++idx) {
                    const Disc& img = images[idx];
                    if (disc_meets_interior(img, cfg.square)) {
                        cfg.deletions.push_back(
                            {img, {Provenance::Layer::Transplant, h.index, fam.params.n}});
                        ++rec.retained;
                    } else {
                        ++rec.discarded;
                    }
                }
            if (static_cast<std::int64_t>(cfg.deletions.size()) > caps.disc_cap)
                throw ResourceError("deletion list exceeds the disc cap");
        } else {
            // nothing materialized: the whole product is truncation, charged
            // in image scale (unit budgets divide by the host radius)
            rec.charged = truncation_tail(rec.start - 1.0) / rl;
        }
        if (!(rec.charged < rec.epsilon)) {
            std::ostringstream os;
            os << "host " << h.index << " charge " << rec.charged
               << " reaches its allowance " << rec.epsilon;
            throw BudgetError(os.str());
        }
        cfg.ledger.transplant_charged += rec.charged;
        cfg.transplants.push_back(rec);
    }
    if (!(cfg.ledger.transplant_charged < C0))
        throw BudgetError("summed transplant charges reach C0");
    for (const auto& d : cfg.deletions) {
        double s = dist_to_square_boundary(d.disc, cfg.square);
        if (!(s > 0.0)) throw BudgetError("a retained disc touches the square boundary");
        cfg.ledger.transplant_boundary += d.disc.radius / (s * s);
    }
    if (!(cfg.ledger.transplant_boundary < C0))
        throw BudgetError("retained boundary budget reaches C0");
    cfg.ledger.combined_integral = 2.0 * M_PI * cfg.ledger.transplant_boundary;
    return cfg;
}

double level_scale(int n) {
    if (n < 1) throw DomainError("scale level must be at least 1");
    return double(n) / (double(n) + 1.0);
}

double length_budget(int n, double C) {
    if (n < 1) throw DomainError("scale level must be at least 1");
    if (!(C > 0.0)) throw DomainError("C must be positive");
    const double inv = 1.0 / (double(n) + 1.0);
    return std::ldexp(C * inv * inv, -(n + 1));
}

DiscProvider stub_provider(std::uint64_t seed) {
    return [seed](int level, double scale, double max_total_length) {
        std::vector<Disc> out;
        const double rho = max_total_length / (12.0 * M_PI);
        if (!(rho > 0.0) || rho >= scale / 4.0) return out;
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL +
                            std::uint64_t(level) * 0xbf58476d1ce4e5b9ULL + 1);
        auto uniform = [&rng] { return double(rng() >> 11) * 0x1.0p-53; };
        const double span = scale - rho;
        int placed = 0;
        for (int guard = 0; placed < 3 && guard < 4096; ++guard) {
            Complex c{span * (2.0 * uniform() - 1.0), span * (2.0 * uniform() - 1.0)};
            bool clear = true;
            for (const auto& d : out)
                if (std::abs(c - d.center) < 4.0 * rho) {
                    clear = false;
                    break;
                }
            if (!clear) continue;
            out.push_back({c, rho});
            ++placed;
        }
        return out;
    };
}

DiscProvider empty_provider() {
    return [](int, double, double) { return std::vector<Disc>{}; };
}

CheeseConfig assemble_cheese(double C, std::int64_t L, int n_levels,
                             const DiscProvider& provider, std::uint64_t seed,
                             const BuildCaps& caps) {
    if (!(C > 0.0)) throw DomainError("C must be positive");
    if (n_levels < 0) throw DomainError("level count cannot be negative");
    CheeseConfig cfg = build_regular_cheese(C / (4.0 * M_PI), L, caps);
    cfg.C = C;
    cfg.n_levels = n_levels;
    cfg.seed = seed;
    for (int n = 1; n <= n_levels; ++n) {
        const double scale = level_scale(n);
        const double budget = length_budget(n, C);
        std::vector<Disc> discs = provider ? provider(n, scale, budget)
                                           : std::vector<Disc>{};
        double len = 0.0;
        std::int64_t k = 0;
        for (const auto& d : discs) {
            if (!(d.radius > 0.0))
                throw DegenerateError("provider produced a non-positive radius");
            double reach = std::max(std::abs(d.center.real()),
                                    std::abs(d.center.imag())) + d.radius;
            if (!(reach <= scale)) {
                std::ostringstream os;
                os << "provider disc escapes its scaled square at level " << n;
                throw BudgetError(os.str());
            }
            len += 2.0 * M_PI * d.radius;
            cfg.deletions.push_back({d, {Provenance::Layer::Provider, n, k++}});
            double s = dist_to_square_boundary(d, cfg.square); // >= 1 - scale > 0
            cfg.ledger.provider_integral += 2.0 * M_PI * d.radius / (s * s);
        }
        if (!(len < budget)) {
            std::ostringstream os;
            os << "provider length " << len << " reaches the level-" << n
               << " allowance " << budget;
            throw BudgetError(os.str());
        }
        cfg.ledger.provider_length += len;
        if (static_cast<std::int64_t>(cfg.deletions.size()) > caps.disc_cap)
            throw ResourceError("deletion list exceeds the disc cap");
    }
    cfg.ledger.combined_integral =
        cfg.ledger.provider_integral + 2.0 * M_PI * cfg.ledger.transplant_boundary;
    if (!(cfg.ledger.combined_integral <= C / 2.0 + 2.0 * M_PI * cfg.C0))
        throw BudgetError("combined integral exceeds C/2 + 2 pi C0");
    return cfg;
}

} // namespace cheese
