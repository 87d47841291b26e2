#include "cheese/ratfunc.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cheese {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex cpow_ll(Complex z, long long n) {
    Complex acc{1.0, 0.0};
    while (n > 0) {
        if (n & 1) acc *= z;
        n >>= 1;
        if (n) z *= z;
    }
    return acc;
}

// -ln q with q = (R / shrink_r)^(N_r), computed so it saturates cleanly:
// +inf for levels past double range, and a negative flag value when R is not
// strictly inside the pole ring.
double neg_log_q(double r, double R) {
    if (R == 0.0) return kInf;
    double N = r * std::exp2(2.0 * r);
    double log_ratio = std::log1p(-std::exp2(-2.0 * r)) - std::log(R);
    if (!(log_ratio > 0.0)) return -1.0;
    return N * log_ratio;
}

// Per-factor circle bounds certify a tail start when every level from `from`
// on satisfies q/(1-q) <= (r+1)^-4. Explicit checks run until -ln q clears
// 40 + 8 ln(r+2); past that point -ln q at least quadruples per level (N
// quadruples and the ring radius only grows), which keeps 2q under (r+2)^-4
// for every later level, so the check can stop.
void certify_tail(double from, double R) {
    if (!(R >= 0.0) || !(R < 1.0))
        throw DomainError("tail certification needs |z| strictly below 1");
    for (double r = from;; r += 1.0) {
        double cap = std::pow(r + 1.0, -4.0);
        double b = tail_factor_bound(r, R);
        if (!(b <= cap)) {
            std::ostringstream os;
            os << "tail factor bound " << b << " exceeds (r+1)^-4 at level " << r
               << " for |z| = " << R;
            throw DomainError(os.str());
        }
        if (neg_log_q(r, R) >= 40.0 + 8.0 * std::log(r + 2.0)) break;
        if (r - from > 256.0)
            throw DomainError("tail certification failed to stabilize");
    }
}

} // namespace

LevelParams LevelParams::make(int n) {
    if (n < 2) throw DomainError("level index must be at least 2");
    if (n > 29)
        throw ResourceError("level index too large: N = n*2^(2n) leaves the integer range");
    LevelParams p;
    p.n = n;
    p.N = static_cast<long long>(n) << (2 * n);
    p.shrink = 1.0 - std::ldexp(1.0, -2 * n);
    const double n3 = double(n) * n * n;
    p.delta = std::ldexp(1.0 / n3, -2 * n);
    p.disc_radius = std::ldexp(1.0 / (n3 * n * n), -4 * n);
    return p;
}

bool LevelParams::delta_condition() const {
    return delta < 1.0 / (8.0 * std::log(double(N)));
}

Complex LevelParams::pole(long long k) const {
    double angle = M_PI * (2.0 * double(k) + 1.0) / double(N);
    return std::polar(shrink, angle);
}

long long LevelParams::nearest_pole_index(Complex z) const {
    double theta = std::arg(z); // (-pi, pi]
    double k = std::floor((theta * double(N) / M_PI - 1.0) / 2.0 + 0.5);
    long long ki = static_cast<long long>(k) % N;
    if (ki < 0) ki += N;
    return ki;
}

Complex ring_reciprocal(long long N, Complex z) {
    if (N < 2) throw DomainError("ring order must be at least 2");
    Complex zN;
    if (N <= (1LL << 16)) {
        zN = cpow_ll(z, N);
    } else {
        zN = log_pow(LogComplex::from(z), N).to_complex();
    }
    if (!std::isfinite(zN.real()) || !std::isfinite(zN.imag()))
        return {0.0, 0.0}; // correctly rounded limit once the power overflows
    Complex den = 1.0 - zN;
    if (std::abs(den) < kPoleTolerance * double(N)) {
        std::ostringstream os;
        os << "evaluation within pole tolerance of the ring, N = " << N;
        throw PoleError(os.str());
    }
    return 1.0 / den;
}

LogComplex ring_reciprocal_log(long long N, Complex z) {
    if (N < 2) throw DomainError("ring order must be at least 2");
    LogComplex p = log_pow(LogComplex::from(z), N);
    LogComplex den;
    if (p.log_mag > 700.0) {
        // 1 - w = -w (1 - 1/w); the reciprocal power is representable when
        // w itself is not, and 1/w is far from 1 here
        Complex inv = LogComplex{-p.log_mag, wrap_phase(-p.phase)}.to_complex();
        LogComplex corr = LogComplex::from(Complex{1.0, 0.0} - inv);
        den = LogComplex{p.log_mag + corr.log_mag,
                         wrap_phase(p.phase + M_PI + corr.phase)};
    } else {
        Complex d = Complex{1.0, 0.0} - p.to_complex();
        if (std::abs(d) < kPoleTolerance * double(N)) {
            std::ostringstream os;
            os << "evaluation within pole tolerance of the ring, N = " << N;
            throw PoleError(os.str());
        }
        den = LogComplex::from(d);
    }
    return {-den.log_mag, wrap_phase(-den.phase)};
}

Complex level_factor(const LevelParams& p, Complex z) {
    Complex w = std::polar(1.0, -M_PI / double(p.N)) * z / p.shrink;
    return ring_reciprocal(p.N, w);
}

LogComplex level_factor_log(const LevelParams& p, Complex z) {
    Complex w = std::polar(1.0, -M_PI / double(p.N)) * z / p.shrink;
    return ring_reciprocal_log(p.N, w);
}

ProductFunction ProductFunction::make(int start, int last) {
    if (start < 2) throw DomainError("product start index must be at least 2");
    if (last < start - 1) throw DomainError("product range ends before it starts");
    if (last >= start) (void)LevelParams::make(last); // range check on the top level
    ProductFunction f;
    f.start = start;
    f.last = last;
    f.log_prefactor = -4.0 * std::lgamma(double(start) + 1.0);
    return f;
}

LogComplex partial_product(const ProductFunction& f, Complex z,
                           bool reject_inside_pole_discs) {
    LogComplex acc = LogComplex::from_log(f.log_prefactor, 0.0);
    for (int r = f.start; r <= f.last; ++r) {
        LevelParams p = LevelParams::make(r);
        if (reject_inside_pole_discs) {
            Complex c = p.pole(p.nearest_pole_index(z));
            if (std::abs(z - c) < p.disc_radius) {
                std::ostringstream os;
                os << "point lies in a deleted disc of level " << r;
                throw DomainError(os.str());
            }
        }
        acc *= level_factor_log(p, z);
    }
    return acc;
}

LimitValue limit_product(const ProductFunction& f, Complex z) {
    LimitValue v;
    v.partial = partial_product(f, z, true);
    const double from = double(f.last) + 1.0;
    certify_tail(from, std::abs(z));
    tail_interval_log(from, &v.tail_log_lo, &v.tail_log_hi);
    v.log_lower = v.partial.log_mag + v.tail_log_lo;
    v.log_upper = v.partial.log_mag + v.tail_log_hi;
    return v;
}

LimitValue limit_tail_real(double start, Complex z) {
    if (!(start >= 2.0)) throw DomainError("tail start must be at least 2");
    LimitValue v;
    v.partial = LogComplex::one();
    certify_tail(start, std::abs(z));
    tail_interval_log(start, &v.tail_log_lo, &v.tail_log_hi);
    v.log_lower = v.tail_log_lo;
    v.log_upper = v.tail_log_hi;
    return v;
}

void tail_interval_log(double from, double* lo, double* hi) {
    // terms are (r+1)^-4 for r >= from; substitute k = r+1
    const double x = from + 1.0;
    double sum_hi = 0.0; // upper bound on sum k^-4
    double log_lo = 0.0; // lower bound on sum log(1 - k^-4)
    if (x <= 1.0e6) {
        double k = x;
        for (; k < x + 256.0 && k <= 1.0e6; k += 1.0) {
            double u = 1.0 / (k * k * k * k);
            sum_hi += u;
            log_lo += std::log1p(-u);
        }
        // sum_{j >= k} j^-4 <= integral over [k-1, inf) of t^-4 dt
        double rem = 1.0 / (3.0 * (k - 1.0) * (k - 1.0) * (k - 1.0));
        sum_hi += rem;
        log_lo -= rem / (1.0 - 1.0 / (k * k * k * k));
    } else {
        double rem = 1.0 / (3.0 * (x - 1.0) * (x - 1.0) * (x - 1.0));
        sum_hi = rem;
        log_lo = (rem == 0.0) ? 0.0 : -rem / (1.0 - std::pow(x, -4.0));
    }
    // directed slack for the double accumulation
    *hi = sum_hi * (1.0 + 1e-12) + 1e-305; // log(1+u) <= u termwise
    *lo = log_lo * (1.0 + 1e-12) - 1e-305;
}

double tail_factor_bound(double r, double R) {
    double t = neg_log_q(r, R);
    if (!(t > 0.0)) return kInf;
    double q = std::exp(-t);
    if (!(q < 1.0)) return kInf; // t subnormal: exp rounded up to 1
    return q / (1.0 - q);
}

} // namespace cheese
