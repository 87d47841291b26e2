#pragma once

#include <complex>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/geometry.hpp"

namespace cheese {

/// Dense polynomial with complex coefficients, ascending powers.
struct Polynomial {
    std::vector<Complex> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> c) : coeffs(std::move(c)) { trim(); }

    void trim();
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    [[nodiscard]] bool is_zero() const { return coeffs.empty(); }

    [[nodiscard]] Complex eval(Complex z) const;
    /// Sum of |c_k| |z|^k, the scale used for relative pole tests.
    [[nodiscard]] double eval_scale(Complex z) const;
    [[nodiscard]] Polynomial derivative() const;

    static Polynomial constant(Complex c);
    /// Monic product of (z - root_i).
    static Polynomial from_roots(const std::vector<Complex>& roots);
};

Polynomial operator+(const Polynomial& a, const Polynomial& b);
Polynomial operator-(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Complex s, const Polynomial& a);

/// Quotient of polynomials; denominator never identically zero.
struct RationalExpr {
    Polynomial num;
    Polynomial den = Polynomial::constant(1.0);

    /// Throws PoleError when the denominator vanishes at z relative to its
    /// coefficient scale (threshold 1e-14 * scale).
    [[nodiscard]] Complex eval(Complex z) const;

    /// Exact quotient-rule derivative (num' den - num den') / den^2.
    [[nodiscard]] RationalExpr derivative() const;

    static RationalExpr identity();          // z
    static RationalExpr constant(Complex c);
    static RationalExpr simple_pole(Complex p, Complex coeff); // coeff/(z-p)
};

RationalExpr operator+(const RationalExpr& a, const RationalExpr& b);
RationalExpr operator*(const RationalExpr& a, const RationalExpr& b);

/// All roots of p by Durand-Kerner iteration; empty for constants. Meant for
/// the small, well-separated denominators of test expressions.
std::vector<Complex> polynomial_roots(const Polynomial& p);

} // namespace cheese
