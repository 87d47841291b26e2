#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cheese/construction.hpp"
#include "cheese/geometry.hpp"
#include "cheese/ratexpr.hpp"
#include "cheese/ratfunc.hpp"

namespace cheese {

/// Closed interval of reals, used for certified constants.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Deterministic sample layout. Points come from golden-ratio low-discrepancy
/// sequences offset by the seed, so a plan with a larger count extends the
/// smaller plan's points instead of reshuffling them.
struct SamplePlan {
    enum class Region { Circle, Annulus, SquareBoundary, Grid };
    Region region = Region::Circle;
    double r0 = 1.0; // circle radius, or annulus inner radius
    double r1 = 1.0; // annulus outer radius
    Square sq = unit_square();
    int count = 4096;
    std::uint64_t seed = 1;
};

std::vector<Complex> make_samples(const SamplePlan& plan);

/// Removes points closer than keep_out * radius to any disc center.
std::vector<Complex> drop_near_discs(std::vector<Complex> pts,
                                     const std::vector<Disc>& discs,
                                     double keep_out);

/// Outcome of one inequality check. Bounds are tested weakly: verdict is
/// pass iff margin >= 0; callers that need strict margins test margin > 0.
struct CertReport {
    std::string id;
    std::string params;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0; // bound - measured
    std::string samples;
    bool pass = false;
    std::string notes;
};

/// Stand-in lower bound for "any finite log magnitude": nonvanishing checks
/// report min log|value| against this sentinel, so an encoded zero (-inf)
/// fails and every finite magnitude passes.
inline constexpr double kLogZeroSentinel = -1.0e300;

/// Ring-reciprocal magnitude bounds: decay |h| <= 2|z|^-N on |z|^N >= 2,
/// deviation |1-h| <= 2|z|^N on |z|^N <= 1/2, and the separated-sample bound
/// |h| <= 2/delta at distance >= delta/N from every root of unity (reported
/// inapplicable unless delta < 1/(8 log N)).
std::array<CertReport, 3> check_h_bounds(long long N, double delta,
                                         int samples = 4096,
                                         std::uint64_t seed = 1);

/// Seven reports for the level family at n: exhaustive cross budget < n^-2;
/// exact pole-in-disc containment; outer sup |g| and inner deviation |1-g|
/// against (n+1)^-4; off-disc sup against both candidate exponents; sampled
/// nonvanishing; exhaustive annulus containment.
std::vector<CertReport> check_level_family(int n, int samples = 4096,
                                           std::uint64_t seed = 1);

/// Certified enclosure of prod_{r>=1} (1 + (r+1)^-4).
Interval convergence_constant();

/// Max over admissible samples of |f_{n+1} - f_n| against K_lo (n+1)^-2 for
/// each n in [m, n_max-1]; the report's margin is the worst level's.
CertReport check_convergence(int m, int n_max, int samples = 1000,
                             std::uint64_t seed = 1);

/// Certified positive lower bound on the limit |f(z)|; measured is the log
/// lower bound, tested against the encoded-zero sentinel.
CertReport check_nonvanishing(int m, int n_max, Complex z);

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double error_estimate = 0.0;
    long long panels = 0;
    bool converged = true; // false: panel cap hit before the tolerance
};

/// Adaptive Gauss-Kronrod (7,15) integration of f over the four edges of sq,
/// counterclockwise. Panels whose error indicator reaches the roundoff floor
/// of their absolute integral are accepted as converged (subdividing cannot
/// improve them), so the achieved error is abs_tol plus a machine-precision
/// multiple of the integral of |f|.
QuadratureResult integrate_edges(const std::function<Complex(Complex)>& f,
                                 const Square& sq, double abs_tol = 1e-10,
                                 long long panel_cap = 1 << 16);

/// The boundary derivation pairing: integral over the boundary of Q of
/// f'(z) g(z) dz. Throws PoleOnContourError when a denominator root of either
/// expression sits on (or numerically on) the contour.
QuadratureResult contour_integral_boundary(const RationalExpr& f,
                                           const RationalExpr& g,
                                           double tol = 1e-10);

/// Rational function in partial-fractions form: constant + sum coeff/(z-pole).
/// The independent oracle for contour integrals.
struct PoleSum {
    struct Term {
        Complex coeff{0.0, 0.0};
        Complex pole{0.0, 0.0};
    };
    Complex constant{0.0, 0.0};
    std::vector<Term> terms;
};

RationalExpr to_ratexpr(const PoleSum& p);

/// 2*pi*i times the sum of residues of f' g at poles strictly inside sq,
/// from the closed-form partial-fractions expansion (no quadrature).
Complex residue_derivation_value(const PoleSum& f, const PoleSum& g,
                                 const Square& sq = unit_square());

/// Lower estimate of the sup norm of e on X = Q minus the deleted discs, by
/// sampling the square boundary, every retained disc boundary, and a grid
/// over the remainder. density points per curve, density^2 grid candidates;
/// nested sample sequences make the estimate nondecreasing in density.
/// Throws PoleInXError if a denominator root lies in X.
double sup_norm_estimate(const RationalExpr& e, const CheeseConfig& cfg,
                         int density);

/// Report 1: |integral| against 2 |f|_X |g|_X * (ledger combined sum).
/// Report 2: |integral| against C |f|_X |g|_X. Sup norms are under-estimates,
/// so a negative margin is marked inconclusive in the notes, not disproof.
std::array<CertReport, 2> check_derivation_bound(const RationalExpr& f,
                                                 const RationalExpr& g,
                                                 const CheeseConfig& cfg,
                                                 int density = 512,
                                                 double tol = 1e-10);

/// Sum radius/dist(disc, boundary of Q)^2 over retained transplant-layer
/// discs, recomputed from the raw deletion list (not read from the ledger).
double recompute_boundary_budget(const CheeseConfig& cfg);

/// Both layers in boundary-length form, 2*pi*radius/dist^2, recomputed.
double recompute_combined_integral(const CheeseConfig& cfg);

/// One point-separation witness: a host disc containing z0 and missing B,
/// with a certified log lower bound for the transplanted product at z0 and a
/// certified log upper bound over B.
struct WitnessRecord {
    AdmissibleDisc host;
    double epsilon = 0.0;
    double start = 0.0;          // start level of the host's product (real-valued)
    double log_lower_z0 = 0.0;
    double log_upper_B = 0.0; // max over B; -inf when every factor bound saturates
    /// log_upper_B - log_lower_z0 with the shared (m!)^-4 prefactor cancelled
    /// exactly, so the separation survives even when both sides are huge.
    double log_gap = 0.0;
    bool upper_saturated = false;
};

/// Scans the enumeration for the first host disc with z0 well inside and all
/// of B strictly outside, then bounds the transplanted product on both sides.
/// Throws DomainError if z0 or B touch a deleted disc or each other;
/// SearchExhausted if no host is found within the first l_search_cap entries.
WitnessRecord regularity_witness(Complex z0, const std::vector<Complex>& B,
                                 const CheeseConfig& cfg,
                                 std::int64_t l_search_cap = 100000);

} // namespace cheese
