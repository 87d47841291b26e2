#include "cheese/ratexpr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cheese {

void Polynomial::trim() {
    while (!coeffs.empty() && coeffs.back() == Complex{0.0, 0.0}) coeffs.pop_back();
}

Complex Polynomial::eval(Complex z) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double Polynomial::eval_scale(Complex z) const {
    const double az = std::abs(z);
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * az + std::abs(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs.size() <= 1) return {};
    std::vector<Complex> d(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = double(k) * coeffs[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::constant(Complex c) { return Polynomial({c}); }

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots) {
    Polynomial p = constant(1.0);
    for (Complex r : roots) p = p * Polynomial({-r, Complex{1.0, 0.0}});
    return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs.size(), b.coeffs.size()), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) c[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) c[k] += b.coeffs[k];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs.size(), b.coeffs.size()), Complex{0.0, 0.0});
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) c[k] += a.coeffs[k];
    for (std::size_t k = 0; k < b.coeffs.size(); ++k) c[k] -= b.coeffs[k];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Complex> c(a.coeffs.size() + b.coeffs.size() - 1, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial& a) {
    std::vector<Complex> c(a.coeffs);
    for (auto& x : c) x *= s;
    return Polynomial(std::move(c));
}

Complex RationalExpr::eval(Complex z) const {
    Complex d = den.eval(z);
    double scale = den.eval_scale(z);
    if (scale <= 0.0) throw DegenerateError("rational expression with zero denominator");
    if (std::abs(d) <= 1e-14 * scale) {
        std::ostringstream os;
        os << "rational expression evaluated at a denominator zero near ("
           << z.real() << ", " << z.imag() << ")";
        throw PoleError(os.str());
    }
    return num.eval(z) / d;
}

RationalExpr RationalExpr::derivative() const {
    RationalExpr r;
    r.num = num.derivative() * den - num * den.derivative();
    r.den = den * den;
    return r;
}

RationalExpr RationalExpr::identity() {
    return {Polynomial({Complex{0.0, 0.0}, Complex{1.0, 0.0}}), Polynomial::constant(1.0)};
}

RationalExpr RationalExpr::constant(Complex c) {
    return {Polynomial::constant(c), Polynomial::constant(1.0)};
}

RationalExpr RationalExpr::simple_pole(Complex p, Complex coeff) {
    return {Polynomial::constant(coeff), Polynomial({-p, Complex{1.0, 0.0}})};
}

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
}

RationalExpr operator*(const RationalExpr& a, const RationalExpr& b) {
    return {a.num * b.num, a.den * b.den};
}

std::vector<Complex> polynomial_roots(const Polynomial& p) {
    const int deg = p.degree();
    if (deg <= 0) return {};
    std::vector<Complex> c(p.coeffs);
    const Complex lead = c.back();
    for (auto& x : c) x /= lead;
    auto val = [&](Complex z) {
        Complex acc{0.0, 0.0};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    };
    std::vector<Complex> w(static_cast<std::size_t>(deg));
    Complex g{0.4, 0.9}, acc{1.0, 0.0};
    for (auto& x : w) {
        acc *= g;
        x = acc;
    }
    for (int it = 0; it < 600; ++it) {
        double moved = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            Complex den{1.0, 0.0};
            for (std::size_t j = 0; j < w.size(); ++j)
                if (j != k) den *= (w[k] - w[j]);
            if (den == Complex{0.0, 0.0}) {
                w[k] += Complex{1e-8, 1e-8};
                moved = 1.0;
                continue;
            }
            Complex delta = val(w[k]) / den;
            w[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13) break;
    }
    return w;
}

} // namespace cheese
