#include "cheese/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cheese/parallel.hpp"

namespace cheese {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGolden = 0.6180339887498949;
// 2D low-discrepancy increments (inverse powers of the plastic number)
constexpr double kR2a = 0.7548776662466927;
constexpr double kR2b = 0.5698402909980532;

double frac(double x) { return x - std::floor(x); }

double seed_offset(std::uint64_t seed, int lane) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * std::uint64_t(lane + 1));
    return double(rng() >> 11) * 0x1.0p-53;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmtc(Complex z) {
    std::string s = fmt(z.real());
    if (z.imag() >= 0.0 || std::isnan(z.imag())) s += "+";
    s += fmt(z.imag());
    s += "i";
    return s;
}

CertReport make_row(std::string id, std::string params, double measured,
                    double bound, std::string samples, std::string notes) {
    CertReport r;
    r.id = std::move(id);
    r.params = std::move(params);
    r.measured = measured;
    r.bound = bound;
    r.margin = bound - measured;
    r.pass = (r.margin >= 0.0) && !std::isnan(measured);
    r.samples = std::move(samples);
    r.notes = std::move(notes);
    return r;
}

double min_pole_gap(const LevelParams& p, Complex z) {
    const long long k0 = p.nearest_pole_index(z);
    double best = kInf;
    for (long long dk = -1; dk <= 1; ++dk) {
        long long k = (k0 + dk + p.N) % p.N;
        best = std::min(best, std::abs(z - p.pole(k)));
    }
    return best;
}

} // namespace

std::vector<Complex> make_samples(const SamplePlan& plan) {
    if (plan.count < 0) throw DomainError("sample count cannot be negative");
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(plan.count));
    const double o1 = seed_offset(plan.seed, 0);
    const double o2 = seed_offset(plan.seed, 1);
    switch (plan.region) {
        case SamplePlan::Region::Circle:
            for (int j = 0; j < plan.count; ++j) {
                double t = frac(o1 + j * kGolden);
                pts.push_back(std::polar(plan.r0, 2.0 * M_PI * t));
            }
            break;
        case SamplePlan::Region::Annulus:
            for (int j = 0; j < plan.count; ++j) {
                double t = frac(o1 + j * kR2a);
                double u = frac(o2 + j * kR2b);
                double rho = std::sqrt(plan.r0 * plan.r0 +
                                       (plan.r1 * plan.r1 - plan.r0 * plan.r0) * u);
                pts.push_back(std::polar(rho, 2.0 * M_PI * t));
            }
            break;
        case SamplePlan::Region::SquareBoundary: {
            const auto cs = corners(plan.sq);
            for (int j = 0; j < plan.count; ++j) {
                double t = 4.0 * frac(o1 + j * kGolden);
                int e = std::min(3, static_cast<int>(t));
                double s = t - e;
                pts.push_back(cs[e] + (cs[(e + 1) % 4] - cs[e]) * s);
            }
            break;
        }
        case SamplePlan::Region::Grid:
            for (int j = 0; j < plan.count; ++j) {
                double t = frac(o1 + j * kR2a);
                double u = frac(o2 + j * kR2b);
                pts.push_back(plan.sq.center +
                              Complex{plan.sq.half_width * (2.0 * t - 1.0),
                                      plan.sq.half_width * (2.0 * u - 1.0)});
            }
            break;
    }
    return pts;
}

std::vector<Complex> drop_near_discs(std::vector<Complex> pts,
                                     const std::vector<Disc>& discs,
                                     double keep_out) {
    std::vector<Complex> out;
    out.reserve(pts.size());
    for (Complex z : pts) {
        bool ok = true;
        for (const Disc& d : discs)
            if (std::abs(z - d.center) < keep_out * d.radius) {
                ok = false;
                break;
            }
        if (ok) out.push_back(z);
    }
    return out;
}

std::array<CertReport, 3> check_h_bounds(long long N, double delta, int samples,
                                         std::uint64_t seed) {
    if (N < 2) throw DomainError("ring order must be at least 2");
    if (samples < 1) throw DomainError("need at least one sample");
    std::array<CertReport, 3> out;
    const double Nd = double(N);
    const std::string prefix = "ring-bound.N" + std::to_string(N) + ".";
    const std::string params = "N=" + std::to_string(N) + " delta=" + fmt(delta) +
                               " seed=" + std::to_string(seed);
    const double o1 = seed_offset(seed, 0);
    const double o2 = seed_offset(seed, 1);
    const double o3 = seed_offset(seed, 2);

    {
        // |h| <= 2 |z|^-N wherever |z|^N >= 2
        const double rlo = std::pow(2.0, 1.0 / Nd) * (1.0 + 1e-4);
        const double rhi = std::max(1.6, rlo * 1.25);
        double worst = -kInf;
        for (int j = 0; j < samples; ++j) {
            double t = frac(o1 + j * kR2a);
            double u = frac(o2 + j * kR2b);
            double R = rlo * std::pow(rhi / rlo, u);
            Complex z = std::polar(R, 2.0 * M_PI * t);
            LogComplex h = ring_reciprocal_log(N, z);
            worst = std::max(worst, h.log_mag - (std::log(2.0) - Nd * std::log(R)));
        }
        out[0] = make_row(prefix + "decay", params, std::exp(worst), 1.0,
                          std::to_string(samples) + " log-spiral points on [" +
                              fmt(rlo) + ", " + fmt(rhi) + "]",
                          "worst |h| / (2|z|^-N)");
    }
    {
        // |1-h| <= 2 |z|^N wherever |z|^N <= 1/2; identity |1-h| = |z|^N |h|
        // reduces the ratio to |h|/2, which cannot underflow
        const double rhi = std::pow(0.5, 1.0 / Nd) * (1.0 - 1e-4);
        double worst = -kInf;
        for (int j = 0; j < samples; ++j) {
            double t = frac(o1 + j * kR2a);
            double u = frac(o2 + j * kR2b);
            Complex z = std::polar(rhi * u, 2.0 * M_PI * t);
            LogComplex h = ring_reciprocal_log(N, z);
            worst = std::max(worst, h.log_mag - std::log(2.0));
        }
        out[1] = make_row(prefix + "near-one", params, std::exp(worst), 1.0,
                          std::to_string(samples) + " disc points up to radius " + fmt(rhi),
                          "worst |1-h| / (2|z|^N), via |1-h| = |z|^N |h|");
    }
    {
        if (!(delta > 0.0) || !(delta < 1.0 / (8.0 * std::log(Nd)))) {
            CertReport r;
            r.id = prefix + "separated";
            r.params = params;
            r.samples = "none";
            r.pass = false;
            r.notes = "inapplicable: needs 0 < delta < 1/(8 log N) = " +
                      fmt(1.0 / (8.0 * std::log(Nd)));
            out[2] = r;
        } else {
            // |h| <= 2/delta at unit-circle points >= delta/N from every root
            const double amin = 1.05 * delta / Nd;
            const double amax = M_PI / Nd;
            double worst = -kInf;
            long long used = 0;
            for (int j = 0; j < samples; ++j) {
                double t = frac(o1 + j * kR2a);
                double u = frac(o2 + j * kR2b);
                double v = frac(o3 + j * kGolden);
                long long k = static_cast<long long>(t * Nd) % N;
                double a = amin + (amax - amin) * u;
                double theta = (2.0 * M_PI * double(k)) / Nd + (v < 0.5 ? -a : a);
                Complex z = std::polar(1.0, theta);
                double root_offset = std::abs(std::remainder(theta * Nd / (2.0 * M_PI), 1.0));
                double chord = 2.0 * std::sin(root_offset * M_PI / Nd);
                if (!(chord >= delta / Nd)) continue;
                ++used;
                double h = std::exp(ring_reciprocal_log(N, z).log_mag);
                worst = std::max(worst, h * delta / 2.0);
            }
            out[2] = make_row(prefix + "separated", params, worst, 1.0,
                              std::to_string(used) + " of " + std::to_string(samples) +
                                  " unit-circle points past the separation floor",
                              "worst |h| delta / 2");
        }
    }
    return out;
}

std::vector<CertReport> check_level_family(int n, int samples, std::uint64_t seed) {
    if (samples < 8) throw DomainError("need at least eight samples");
    const LevelParams p = LevelParams::make(n);
    const LevelFamily fam = build_level_family(n);
    const std::string prefix = "level-family.n" + std::to_string(n) + ".";
    const std::string params = "n=" + std::to_string(n) + " N=" + std::to_string(p.N) +
                               " seed=" + std::to_string(seed);
    std::vector<CertReport> out;

    out.push_back(make_row(prefix + "budget", params,
                           budget_sum(fam.discs, CrossRef{Complex{0.0, 0.0}}),
                           1.0 / (double(n) * n),
                           "all " + std::to_string(p.N) + " discs",
                           "sum radius / cross-distance^2 at a = 0"));

    {
        double worst = 0.0;
        for (long long k = 0; k < p.N; ++k) {
            // pole reached through the root preimage, not the center formula
            Complex root = std::polar(1.0, 2.0 * M_PI * double(k) / double(p.N));
            Complex pole = p.shrink * (std::polar(1.0, M_PI / double(p.N)) * root);
            worst = std::max(worst, std::abs(pole - fam.discs[size_t(k)].center));
        }
        out.push_back(make_row(prefix + "poles", params, worst, p.disc_radius,
                               "all " + std::to_string(p.N) + " poles",
                               "max |pole - disc center| vs disc radius"));
    }

    double min_log = kInf;
    const double o1 = seed_offset(seed, 0);
    {
        const double radii[4] = {1.0 - std::ldexp(1.0, -(2 * n + 1)),
                                 1.0 - std::ldexp(1.0, -(2 * n + 2)), 1.0,
                                 1.0 + std::ldexp(1.0, -(2 * n + 1))};
        double sup_log = -kInf;
        for (double R : radii)
            for (int j = 0; j < samples / 4; ++j) {
                Complex z = std::polar(R, 2.0 * M_PI * frac(o1 + j * kGolden));
                double lm = level_factor_log(p, z).log_mag;
                sup_log = std::max(sup_log, lm);
                min_log = std::min(min_log, lm);
            }
        double bound = std::pow(double(n) + 1.0, -4.0);
        out.push_back(make_row(prefix + "outer-sup", params, std::exp(sup_log), bound,
                               std::to_string(samples / 4) + " points on 4 circles from " +
                                   fmt(radii[0]),
                               "measured/bound = " + fmt(std::exp(sup_log) / bound)));
    }
    {
        const double rim = 1.0 - std::ldexp(1.0, -(2 * n - 1));
        const double radii[4] = {rim, rim * 0.999, 0.5, 0.1};
        double sup_log = -kInf;
        for (double R : radii)
            for (int j = 0; j < samples / 4; ++j) {
                Complex z = std::polar(R, 2.0 * M_PI * frac(o1 + j * kGolden));
                Complex w = std::polar(1.0, -M_PI / double(p.N)) * z / p.shrink;
                LogComplex g = level_factor_log(p, z);
                min_log = std::min(min_log, g.log_mag);
                // |1 - g| = |w^N| |g| exactly
                sup_log = std::max(sup_log, log_pow(LogComplex::from(w), p.N).log_mag +
                                                g.log_mag);
            }
        double bound = std::pow(double(n) + 1.0, -4.0);
        out.push_back(make_row(prefix + "inner-dev", params, std::exp(sup_log), bound,
                               std::to_string(samples / 4) + " points on 4 circles up to " +
                                   fmt(rim),
                               "measured/bound = " + fmt(std::exp(sup_log) / bound)));
    }
    {
        // standoff keeps the evaluator outside its pole tolerance at high n,
        // where the disc radius itself drops under the tolerance
        const double standoff = std::max(p.disc_radius, 2.0 * kPoleTolerance);
        double sup = 0.0;
        const long long stride = std::max<long long>(1, p.N / 256);
        for (long long k = 0; k < p.N; k += stride)
            for (int j = 0; j < 16; ++j) {
                double phi = 2.0 * M_PI * frac(o1 + (double(k) / stride * 16 + j) * kGolden);
                Complex z = fam.discs[size_t(k)].center + std::polar(standoff, phi);
                double lm = level_factor_log(p, z).log_mag;
                sup = std::max(sup, std::exp(lm));
                min_log = std::min(min_log, lm);
            }
        SamplePlan ann;
        ann.region = SamplePlan::Region::Annulus;
        ann.r0 = 1.0 - std::ldexp(1.0, -(2 * n - 1));
        ann.r1 = 1.0;
        ann.count = samples;
        ann.seed = seed;
        long long kept = 0;
        for (Complex z : make_samples(ann)) {
            if (min_pole_gap(p, z) < standoff) continue;
            ++kept;
            double lm = level_factor_log(p, z).log_mag;
            sup = std::max(sup, std::exp(lm));
            min_log = std::min(min_log, lm);
        }
        const double b4 = std::ldexp(std::pow(double(n), 4.0), 2 * n + 1);
        const double b3 = std::ldexp(std::pow(double(n), 3.0), 2 * n + 1);
        std::string notes = "exponent-3 candidate " + fmt(b3) + " ";
        notes += sup > b3 ? "exceeded (refuted at this level)"
                          : "not exceeded at standoff " + fmt(standoff);
        out.push_back(make_row(prefix + "offdisc-sup", params, sup, b4,
                               "disc boundaries (stride " + std::to_string(stride) +
                                   ") plus " + std::to_string(kept) + " annulus points",
                               notes));
    }
    {
        CertReport r;
        r.id = prefix + "nonzero";
        r.params = params;
        r.measured = min_log;
        r.bound = kLogZeroSentinel;
        r.margin = r.measured - r.bound;
        r.pass = r.margin >= 0.0 && std::isfinite(min_log);
        r.samples = "every sample of the sup checks";
        r.notes = "minimum log|g| over all samples";
        out.push_back(r);
    }
    {
        const double lo = 1.0 - std::ldexp(1.0, -(2 * n - 1));
        const double hi = 1.0 - std::ldexp(1.0, -(2 * n + 1));
        double viol = -kInf;
        for (const Disc& d : fam.discs) {
            double a = std::abs(d.center);
            viol = std::max({viol, lo - (a - d.radius), (a + d.radius) - hi});
        }
        out.push_back(make_row(prefix + "annulus", params, viol, 0.0,
                               "all " + std::to_string(p.N) + " discs",
                               "largest containment violation for [" + fmt(lo) + ", " +
                                   fmt(hi) + "] (negative = inside)"));
    }
    return out;
}

Interval convergence_constant() {
    double prod = 1.0;
    for (int r = 1; r <= 2000; ++r) prod *= 1.0 + std::pow(double(r) + 1.0, -4.0);
    // sum_{r > 2000} (r+1)^-4 <= integral over [2001, inf) of t^-4 dt
    const double tail = 1.0 / (3.0 * 2000.0 * 2000.0 * 2000.0);
    return {prod * (1.0 - 1e-13), prod * (1.0 + 1e-13) * std::exp(tail)};
}

CertReport check_convergence(int m, int n_max, int samples, std::uint64_t seed) {
    if (m < 2 || n_max <= m) throw DomainError("need 2 <= m < n_max");
    if (samples < 1) throw DomainError("need at least one sample");
    const Interval K = convergence_constant();
    std::vector<LevelParams> levels;
    for (int r = m; r <= n_max; ++r) levels.push_back(LevelParams::make(r));

    SamplePlan plan;
    plan.region = SamplePlan::Region::Grid;
    plan.count = samples * 2;
    plan.seed = seed;
    std::vector<Complex> pts;
    for (Complex z : make_samples(plan)) {
        bool ok = true;
        for (const auto& p : levels)
            if (min_pole_gap(p, z) < std::max(8.0 * p.disc_radius, 1e-11)) {
                ok = false;
                break;
            }
        if (ok) pts.push_back(z);
        if (static_cast<int>(pts.size()) == samples) break;
    }

    const double pref = -4.0 * std::lgamma(double(m) + 1.0);
    std::vector<double> max_diff(levels.size(), -kInf); // index i: n = m+i
    for (Complex z : pts) {
        std::vector<double> glog(levels.size()), dev(levels.size());
        for (std::size_t i = 0; i < levels.size(); ++i) {
            const LevelParams& p = levels[i];
            Complex w = std::polar(1.0, -M_PI / double(p.N)) * z / p.shrink;
            glog[i] = level_factor_log(p, z).log_mag;
            dev[i] = log_pow(LogComplex::from(w), p.N).log_mag + glog[i];
        }
        double fmag = pref;
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
            fmag += glog[i]; // now log|f_n| with n = m+i
            max_diff[i] = std::max(max_diff[i], fmag + dev[i + 1]);
        }
    }

    double worst_ratio = -kInf;
    int worst_n = m;
    std::string notes;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        const int n = m + static_cast<int>(i);
        const double bound = K.lo * std::pow(double(n) + 1.0, -2.0);
        const double diff = std::exp(max_diff[i]);
        const double ratio = diff / bound;
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst_n = n;
        }
        if (!notes.empty()) notes += "; ";
        notes += "n=" + std::to_string(n) + " diff " + fmt(diff) + " bound " + fmt(bound);
    }
    return make_row("convergence.m" + std::to_string(m),
                    "m=" + std::to_string(m) + " n_max=" + std::to_string(n_max) +
                        " K=[" + fmt(K.lo) + ", " + fmt(K.hi) + "] seed=" +
                        std::to_string(seed),
                    worst_ratio, 1.0,
                    std::to_string(pts.size()) + " grid points off all discs",
                    "worst at n=" + std::to_string(worst_n) + "; " + notes);
}

CertReport check_nonvanishing(int m, int n_max, Complex z) {
    const ProductFunction f = ProductFunction::make(m, n_max);
    const LimitValue v = limit_product(f, z);
    CertReport r;
    r.id = "limit.nonzero";
    r.params = "m=" + std::to_string(m) + " n_max=" + std::to_string(n_max) +
               " z=" + fmtc(z);
    r.measured = v.log_lower;
    r.bound = kLogZeroSentinel;
    r.margin = r.measured - r.bound;
    r.pass = std::isfinite(v.log_lower) && r.margin > 0.0;
    r.samples = "one certified enclosure";
    r.notes = "log|f(z)| in [" + fmt(v.log_lower) + ", " + fmt(v.log_upper) + "]";
    return r;
}

namespace {

// Cell-hash over the deletion list so point-membership tests stay cheap on
// configurations with many small discs.
class DeletionIndex {
  public:
    explicit DeletionIndex(const std::vector<Deletion>& dels) : dels_(dels) {
        for (int i = 0; i < static_cast<int>(dels.size()); ++i) {
            const Disc& d = dels[size_t(i)].disc;
            if (d.radius >= kCell)
                big_.push_back(i);
            else
                buckets_[key(cell(d.center.real()), cell(d.center.imag()))].push_back(i);
        }
    }

    // strictly inside by a 1e-12 relative margin, so points sampled on a
    // deleted circle itself stay in the sample set
    [[nodiscard]] bool inside(Complex z) const {
        for (int i : big_)
            if (contains(i, z)) return true;
        const long long ix = cell(z.real());
        const long long iy = cell(z.imag());
        for (long long dx = -1; dx <= 1; ++dx)
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = buckets_.find(key(ix + dx, iy + dy));
                if (it == buckets_.end()) continue;
                for (int i : it->second)
                    if (contains(i, z)) return true;
            }
        return false;
    }

  private:
    static constexpr double kCell = 0.01;
    static long long cell(double x) { return static_cast<long long>(std::floor(x / kCell)); }
    static std::uint64_t key(long long ix, long long iy) {
        return (std::uint64_t(std::uint32_t(ix)) << 32) | std::uint32_t(iy);
    }
    [[nodiscard]] bool contains(int i, Complex z) const {
        const Disc& d = dels_[size_t(i)].disc;
        return std::abs(z - d.center) < d.radius * (1.0 - 1e-12);
    }

    const std::vector<Deletion>& dels_;
    std::vector<int> big_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
};

} // namespace

double sup_norm_estimate(const RationalExpr& e, const CheeseConfig& cfg,
                         int density) {
    if (density < 1) throw DomainError("density must be positive");
    const DeletionIndex index(cfg.deletions);
    for (Complex root : polynomial_roots(e.den)) {
        if (point_to_solid_square(root, cfg.square) > 1e-12) continue;
        if (!index.inside(root))
            throw PoleInXError("denominator zero inside the sample set at " + fmtc(root));
    }

    auto value_at = [&](Complex z) -> double {
        if (index.inside(z)) return -kInf;
        try {
            return std::abs(e.eval(z));
        } catch (const PoleError&) {
            return -kInf; // skipped sample; the estimate stays a lower bound
        }
    };

    double best = 0.0;
    const auto cs = corners(cfg.square);
    for (Complex c : cs) best = std::max(best, std::max(0.0, value_at(c)));
    for (int edge = 0; edge < 4; ++edge) {
        const Complex A = cs[edge];
        const Complex dz = cs[(edge + 1) % 4] - A;
        for (int j = 0; j < density; ++j)
            best = std::max(best, value_at(A + dz * frac(j * kGolden)));
    }

    const std::size_t nd = cfg.deletions.size();
    if (nd > 0) {
        best = std::max(best, parallel_max(nd * std::size_t(density), [&](std::size_t s) {
                            const std::size_t i = s / std::size_t(density);
                            const std::size_t j = s % std::size_t(density);
                            const Disc& d = cfg.deletions[i].disc;
                            double phi = 2.0 * M_PI * frac(double(i) * kR2b + double(j) * kGolden);
                            return value_at(d.center + std::polar(d.radius, phi));
                        }));
    }

    const std::size_t grid = std::size_t(density) * std::size_t(density);
    best = std::max(best, parallel_max(grid, [&](std::size_t j) {
                        double t = frac(double(j) * kR2a);
                        double u = frac(double(j) * kR2b);
                        Complex z = cfg.square.center +
                                    Complex{cfg.square.half_width * (2.0 * t - 1.0),
                                            cfg.square.half_width * (2.0 * u - 1.0)};
                        return value_at(z);
                    }));
    return best;
}

std::array<CertReport, 2> check_derivation_bound(const RationalExpr& f,
                                                 const RationalExpr& g,
                                                 const CheeseConfig& cfg,
                                                 int density, double tol) {
    const QuadratureResult q = contour_integral_boundary(f, g, tol);
    const double nf = sup_norm_estimate(f, cfg, density);
    const double ng = sup_norm_estimate(g, cfg, density);
    const double I = std::abs(q.value);
    const std::string samp = "density=" + std::to_string(density) + " panels=" +
                             std::to_string(q.panels) +
                             (q.converged ? "" : " (tolerance not met)");
    const std::string params = "|f|>=" + fmt(nf) + " |g|>=" + fmt(ng) +
                               " quad-err=" + fmt(q.error_estimate);
    auto r1 = make_row("derivation.ledger", params, I,
                       2.0 * nf * ng * cfg.ledger.combined_integral, samp,
                       "|integral f' g| vs 2 |f| |g| (ledger combined sum)");
    auto r2 = make_row("derivation.constant", params, I, cfg.C * nf * ng, samp,
                       "|integral f' g| vs C |f| |g|");
    for (CertReport* r : {&r1, &r2})
        if (!r->pass)
            r->notes += "; inconclusive: sup norms are lower estimates, raise density";
    return {r1, r2};
}

double recompute_boundary_budget(const CheeseConfig& cfg) {
    double total = 0.0;
    for (const auto& d : cfg.deletions) {
        if (d.origin.layer != Provenance::Layer::Transplant) continue;
        double s = dist_to_square_boundary(d.disc, cfg.square);
        if (s == 0.0) return kInf;
        total += d.disc.radius / (s * s);
    }
    return total;
}

double recompute_combined_integral(const CheeseConfig& cfg) {
    double total = 0.0;
    for (const auto& d : cfg.deletions) {
        double s = dist_to_square_boundary(d.disc, cfg.square);
        if (s == 0.0) return kInf;
        total += 2.0 * M_PI * d.disc.radius / (s * s);
    }
    return total;
}

} // namespace cheese
