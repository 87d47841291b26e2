#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/geometry.hpp"
#include "cheese/logcomplex.hpp"

namespace cheese {

/// Derived constants for level n: ring size N = n*2^(2n), radial shrink
/// 1 - 2^-2n, the separation parameter delta = n^-3 * 2^-2n, and the deleted
/// disc radius n^-5 * 2^-4n.
struct LevelParams {
    int n = 0;
    long long N = 0;
    double shrink = 0.0;
    double delta = 0.0;
    double disc_radius = 0.0;

    static LevelParams make(int n);

    /// delta < (8 log N)^-1, the hypothesis of the separated-point bound.
    [[nodiscard]] bool delta_condition() const;

    /// k-th pole of the level function, which is also the k-th deleted disc
    /// center: shrink * exp(i*pi*(2k+1)/N).
    [[nodiscard]] Complex pole(long long k) const;

    /// Index of the pole whose angle is nearest to arg(z).
    [[nodiscard]] long long nearest_pole_index(Complex z) const;
};

inline constexpr double kPoleTolerance = 1e-12;

/// 1/(1 - z^N). Throws PoleError when |z^N - 1| < 1e-12 * N. For N > 2^16 the
/// power is taken by binary doubling on (log|z|, arg z).
Complex ring_reciprocal(long long N, Complex z);

/// Same value in log form; never returns an encoded zero (the function has no
/// zeros) and stays finite for arguments whose power overflows a double.
LogComplex ring_reciprocal_log(long long N, Complex z);

/// Level factor g_n(z) = 1/(1 - w^N) with w = exp(-i*pi/N) * z / shrink.
/// Its poles are exactly the deleted disc centers of the level family.
Complex level_factor(const LevelParams& p, Complex z);
LogComplex level_factor_log(const LevelParams& p, Complex z);

/// Finite product (m!)^-4 * prod_{r=m..last} g_r. last = m-1 encodes the empty
/// product. The prefactor is carried as -4*lgamma(m+1), never via factorials.
struct ProductFunction {
    int start = 4;
    int last = 3;
    double log_prefactor = 0.0;

    static ProductFunction make(int start, int last);
};

/// Evaluates the partial product in log form. With reject_inside_pole_discs
/// set, throws DomainError when z lies inside a deleted disc of any level in
/// range (disc positions are derived from the level parameters).
LogComplex partial_product(const ProductFunction& f, Complex z,
                           bool reject_inside_pole_discs = false);

/// Certified enclosure of the limit value |f(z)| = lim of partial products.
struct LimitValue {
    LogComplex partial;      // value through level `last`
    double tail_log_lo = 0;  // ln prod_{r>last} (1 - (r+1)^-4), minus remainder slack
    double tail_log_hi = 0;  // ln prod_{r>last} (1 + (r+1)^-4), plus remainder slack
    double log_lower = 0;    // ln certified lower bound for |f(z)|
    double log_upper = 0;    // ln certified upper bound for |f(z)|
};

/// Requires |z| strictly inside the region where every tail factor r > last
/// satisfies |1 - g_r(z)| <= (r+1)^-4; each finitely-representable factor is
/// re-checked against its rigorous circle bound and the rest are dominated by
/// the quadrupling of N per level. Throws DomainError otherwise.
LimitValue limit_product(const ProductFunction& f, Complex z);

/// Log enclosure of the tail-only product prod_{r>=start} g_r(z), with a
/// real-valued start for products whose start level exceeds integer range
/// (every factor is then certified by its circle bound, none are evaluated).
/// The enclosure is [tail_log_lo, tail_log_hi]; partial is one. Throws
/// DomainError when |z| is not strictly inside the certified region.
LimitValue limit_tail_real(double start, Complex z);

/// ln prod_{r>=from}(1 - (r+1)^-4) and the matching (1 + ...) end, certified:
/// explicit terms plus an integral remainder bound. from may exceed 2^53; the
/// product is then 1 to double precision.
void tail_interval_log(double from, double* lo, double* hi);

/// Rigorous per-factor bound: sup over |z| <= R of |1 - g_r(z)| when R is
/// inside the level's pole ring, namely q/(1-q) with q = (R/shrink_r)^(N_r).
/// Returns +inf when R is not inside. r passed as double to allow huge levels.
double tail_factor_bound(double r, double R);

} // namespace cheese
