#include <cmath>
#include <vector>

#include "cheese/verify.hpp"

namespace cheese {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1,1]; the Gauss-7 rule reuses
// the odd-index Kronrod abscissae.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    Complex k15{0.0, 0.0};
    double err = 0.0;
    double resabs = 0.0; // integral of |f|, the roundoff scale of the panel
};

Panel gk15(const std::function<Complex(Complex)>& f, Complex A, Complex dz,
           double t0, double t1) {
    const double c = 0.5 * (t0 + t1);
    const double h = 0.5 * (t1 - t0);
    Complex fk{0.0, 0.0}, fg{0.0, 0.0};
    double fa = 0.0;
    const Complex fc = f(A + dz * c);
    fk += kWgk[7] * fc;
    fg += kWg[3] * fc;
    fa += kWgk[7] * std::abs(fc);
    for (int i = 0; i < 7; ++i) {
        const Complex f1 = f(A + dz * (c - h * kXgk[i]));
        const Complex f2 = f(A + dz * (c + h * kXgk[i]));
        fk += kWgk[i] * (f1 + f2);
        if (i % 2 == 1) fg += kWg[i / 2] * (f1 + f2);
        fa += kWgk[i] * (std::abs(f1) + std::abs(f2));
    }
    Panel p;
    p.k15 = fk * h * dz;
    p.err = std::abs((fk - fg) * h * dz);
    p.resabs = fa * h * std::abs(dz);
    return p;
}

// The Kronrod-Gauss difference of a panel bottoms out near 230 ulps of its
// absolute integral; demanding less just recurses to the depth cap.
constexpr double kRoundoffFloor = 500.0 * 2.220446049250313e-16;

} // namespace

QuadratureResult integrate_edges(const std::function<Complex(Complex)>& f,
                                 const Square& sq, double abs_tol,
                                 long long panel_cap) {
    if (!(abs_tol > 0.0)) throw DomainError("quadrature tolerance must be positive");
    const auto cs = corners(sq);
    QuadratureResult out;
    const double edge_tol = abs_tol / 4.0;
    for (int e = 0; e < 4; ++e) {
        const Complex A = cs[e];
        const Complex dz = cs[(e + 1) % 4] - A;
        struct Seg {
            double t0, t1;
            int depth;
        };
        // depth-first, left before right: panel order is deterministic
        std::vector<Seg> stack{{0.0, 1.0, 0}};
        long long edge_panels = 0;
        while (!stack.empty()) {
            const Seg s = stack.back();
            stack.pop_back();
            const Panel p = gk15(f, A, dz, s.t0, s.t1);
            ++edge_panels;
            ++out.panels;
            const bool met = p.err <= edge_tol * (s.t1 - s.t0) ||
                             p.err <= kRoundoffFloor * p.resabs;
            bool done = met;
            if (!done && (s.depth >= 48 || edge_panels >= panel_cap)) {
                done = true;
                out.converged = false;
            }
            if (done) {
                out.value += p.k15;
                out.error_estimate += p.err;
            } else {
                const double mid = 0.5 * (s.t0 + s.t1);
                stack.push_back({mid, s.t1, s.depth + 1});
                stack.push_back({s.t0, mid, s.depth + 1});
            }
        }
    }
    return out;
}

QuadratureResult contour_integral_boundary(const RationalExpr& f,
                                           const RationalExpr& g, double tol) {
    const Square sq = unit_square();
    for (const Polynomial* den : {&f.den, &g.den}) {
        for (Complex root : polynomial_roots(*den)) {
            if (point_to_square_boundary(root, sq) < 1e-9)
                throw PoleOnContourError("denominator zero on the integration contour");
        }
    }
    const RationalExpr fp = f.derivative();
    auto integrand = [&](Complex z) { return fp.eval(z) * g.eval(z); };
    return integrate_edges(integrand, sq, tol, 1 << 16);
}

RationalExpr to_ratexpr(const PoleSum& p) {
    std::vector<Complex> poles;
    poles.reserve(p.terms.size());
    for (const auto& t : p.terms) poles.push_back(t.pole);
    const Polynomial den = Polynomial::from_roots(poles);
    Polynomial num = p.constant * den;
    for (std::size_t i = 0; i < p.terms.size(); ++i) {
        Polynomial rest = Polynomial::constant(p.terms[i].coeff);
        for (std::size_t j = 0; j < poles.size(); ++j)
            if (j != i) rest = rest * Polynomial({-poles[j], Complex{1.0, 0.0}});
        num = num + rest;
    }
    return {num, den};
}

Complex residue_derivation_value(const PoleSum& f, const PoleSum& g,
                                 const Square& sq) {
    auto inside = [&](Complex p) {
        return std::abs(p.real() - sq.center.real()) < sq.half_width &&
               std::abs(p.imag() - sq.center.imag()) < sq.half_width;
    };
    Complex total{0.0, 0.0};
    for (const auto& fi : f.terms) {
        for (const auto& gj : g.terms) {
            const Complex d = fi.pole - gj.pole;
            // coincident poles make a triple pole of f' g with zero residue
            if (std::abs(d) <= 1e-14 * (std::abs(fi.pole) + std::abs(gj.pole) + 1.0))
                continue;
            const Complex v = fi.coeff * gj.coeff / (d * d);
            if (inside(fi.pole)) total += v;
            if (inside(gj.pole)) total -= v;
        }
    }
    return Complex{0.0, 2.0 * M_PI} * total;
}

} // namespace cheese
