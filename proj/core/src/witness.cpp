#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "cheese/verify.hpp"

namespace cheese {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// -ln of the per-level power excess (|w| / shrink_r)^(N_r) for |w| outside
// the ring; saturates to +inf past double range.
double factor_excess(double r, double ratio) {
    const double N = r * std::exp2(2.0 * r);
    const double lr = std::log(ratio) - std::log1p(-std::exp2(-2.0 * r));
    return N * lr;
}

} // namespace

WitnessRecord regularity_witness(Complex z0, const std::vector<Complex>& B,
                                 const CheeseConfig& cfg,
                                 std::int64_t l_search_cap) {
    if (point_to_solid_square(z0, cfg.square) > 1e-12)
        throw DomainError("z0 lies outside the square");
    for (Complex b : B) {
        if (std::abs(b - z0) <= 1e-12)
            throw DomainError("a target point coincides with z0");
        if (point_to_solid_square(b, cfg.square) > 1e-12)
            throw DomainError("a target point lies outside the square");
    }
    for (const auto& d : cfg.deletions) {
        if (std::abs(z0 - d.disc.center) <= d.disc.radius)
            throw DomainError("z0 lies in a deleted disc");
        for (Complex b : B)
            if (std::abs(b - d.disc.center) <= d.disc.radius)
                throw DomainError("a target point lies in a deleted disc");
    }

    std::optional<AdmissibleDisc> found;
    double eps = 0.0;
    double m = 0.0;
    LimitValue tail;
    scan_admissible_discs(cfg.caps.scan_cap, [&](const AdmissibleDisc& ad) {
        if (ad.index > l_search_cap) return false;
        const Disc D = ad.disc();
        // z0 well inside keeps the scaled preimage strictly under radius 1
        // even after the division rounds; B strictly outside by the same margin
        if (!(std::abs(z0 - D.center) <= D.radius * (1.0 - 1e-9))) return true;
        for (Complex b : B)
            if (std::abs(b - D.center) <= D.radius * (1.0 + 1e-9)) return true;
        double e, mm;
        LimitValue tl;
        try {
            e = epsilon_for_index(ad, cfg.C0);
            if (!(e > 0.0)) return true;
            mm = select_start_real(e * D.radius);
            // the z0-side enclosure must close with this host's start level;
            // materialized starts need z0 deep enough inside the disc
            tl = limit_tail_real(mm, (z0 - D.center) / D.radius);
        } catch (const ResourceError&) {
            return true; // allowance too small to use; keep scanning
        } catch (const DomainError&) {
            return true; // z0 outside this start level's certified region
        }
        found = ad;
        eps = e;
        m = mm;
        tail = tl;
        return false;
    });
    if (!found)
        throw SearchExhausted(
            "no admissible host disc separates z0 from the target set within the cap");

    const Disc D = found->disc();
    WitnessRecord w;
    w.host = *found;
    w.epsilon = eps;
    w.start = m;
    const double pref = -4.0 * std::lgamma(m + 1.0);
    w.log_lower_z0 = pref + tail.tail_log_lo;

    double gap_worst = -kInf;
    double upper_worst = -kInf;
    for (Complex b : B) {
        const double ratio = std::abs(b - D.center) / D.radius; // > 1 by selection
        double cum = 0.0;
        bool closed = false;
        for (double r = m, steps = 0.0; steps < 600.0; r += 1.0, steps += 1.0) {
            const double t = factor_excess(r, ratio);
            if (!(t > 0.0)) throw DomainError("target point not outside the host ring");
            if (std::isinf(t)) {
                cum = -kInf; // factor bound underflows: certified zero to doubles
                closed = true;
                break;
            }
            // |g_r| <= 1/(|w|^N - 1) whenever |w|^N > 1
            cum += -std::log(std::expm1(t));
            // past ln 2 every later factor is under 1 (t at least quadruples),
            // so the accumulated bound already covers the whole tail
            if (cum <= -200.0 && t >= std::log(2.0)) {
                closed = true;
                break;
            }
        }
        if (!closed) throw ResourceError("witness upper bound failed to close");
        gap_worst = std::max(gap_worst, cum - tail.tail_log_lo);
        upper_worst = std::max(upper_worst, pref + cum);
    }
    w.log_gap = gap_worst;
    w.log_upper_B = upper_worst;
    w.upper_saturated = B.empty() ? false : std::isinf(upper_worst) && upper_worst < 0;
    return w;
}

} // namespace cheese
