#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace cheese {

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double p) {
    double r = std::remainder(p, 2.0 * M_PI); // lands in [-pi, pi]
    if (r <= -M_PI) r = M_PI;
    return r;
}

/// Complex number stored as (natural log of magnitude, phase in (-pi, pi]).
/// log_mag of -infinity encodes exact zero. Keeps products of thousands of
/// factors whose magnitudes underflow or overflow any double representable.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }

    static LogComplex from(std::complex<double> z) {
        if (z == std::complex<double>(0.0, 0.0)) return zero();
        return {std::log(std::abs(z)), std::arg(z) <= -M_PI ? M_PI : std::arg(z)};
    }

    static LogComplex from_log(double lm, double ph) { return {lm, wrap_phase(ph)}; }

    [[nodiscard]] bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    /// May overflow/underflow to inf/0 when log_mag leaves the double range.
    [[nodiscard]] std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }

    friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
    }
    friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
        return {a.log_mag - b.log_mag, wrap_phase(a.phase - b.phase)};
    }
    LogComplex& operator*=(const LogComplex& o) { return *this = *this * o; }
};

/// z^N by binary doubling on (log|z|, arg z); the phase is re-wrapped after
/// every doubling, so no precision is lost to a single huge angle reduction.
inline LogComplex log_pow(LogComplex z, long long N) {
    LogComplex acc = LogComplex::one();
    while (N > 0) {
        if (N & 1) acc *= z;
        N >>= 1;
        if (N) z = {z.log_mag * 2.0, wrap_phase(z.phase * 2.0)};
    }
    return acc;
}

} // namespace cheese
