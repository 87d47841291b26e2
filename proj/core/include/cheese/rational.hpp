#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>

#include "cheese/errors.hpp"

namespace cheese {

/// Exact rational p/q, q > 0, always reduced. Arithmetic throws on int64
/// overflow rather than wrapping; comparisons go through 128-bit products.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    constexpr Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw DegenerateError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    [[nodiscard]] double to_double() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    [[nodiscard]] bool is_zero() const { return num == 0; }
    [[nodiscard]] Rational abs() const { return num < 0 ? Rational(-num, den) : *this; }

    [[nodiscard]] std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

namespace detail {
inline std::int64_t checked(__int128 v, const char* op) {
    if (v > INT64_MAX || v < INT64_MIN) throw ResourceError(std::string("rational overflow in ") + op);
    return static_cast<std::int64_t>(v);
}
} // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return {detail::checked(n, "+"), detail::checked(d, "+")};
}
inline Rational operator-(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return {detail::checked(n, "-"), detail::checked(d, "-")};
}
inline Rational operator*(const Rational& a, const Rational& b) {
    __int128 n = static_cast<__int128>(a.num) * b.num;
    __int128 d = static_cast<__int128>(a.den) * b.den;
    return {detail::checked(n, "*"), detail::checked(d, "*")};
}
inline Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw DegenerateError("rational division by zero");
    __int128 n = static_cast<__int128>(a.num) * b.den;
    __int128 d = static_cast<__int128>(a.den) * b.num;
    return {detail::checked(n, "/"), detail::checked(d, "/")};
}
inline Rational operator-(const Rational& a) { return {-a.num, a.den}; }

inline bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
}
inline bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
inline bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}
inline bool operator>(const Rational& a, const Rational& b) { return b < a; }
inline bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
inline bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// Parses "p" or "p/q". Throws DomainError on malformed input.
Rational parse_rational(const std::string& text);

} // namespace cheese
