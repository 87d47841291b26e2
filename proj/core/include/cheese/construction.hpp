#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cheese/errors.hpp"
#include "cheese/geometry.hpp"
#include "cheese/ratfunc.hpp"

namespace cheese {

inline constexpr std::int64_t kDefaultDiscCap = std::int64_t(1) << 24;

/// One deleted level: the N discs of radius n^-5 * 2^-4n whose centers are
/// exactly the poles of the level factor g_n.
struct LevelFamily {
    LevelParams params;
    std::vector<Disc> discs;
};

/// Throws ResourceError if N = n*2^(2n) exceeds disc_cap.
LevelFamily build_level_family(int n, std::int64_t disc_cap = kDefaultDiscCap);

/// Smallest start index m with m > 2/epsilon + 1 and
/// (m+1)!^4 > 2 (m+1)^6 2^(2(m+1)) + 2 (m+1)^2 (checked in log domain).
/// Throws ResourceError when m would not fit an int64.
std::int64_t select_start_index(double epsilon);

/// Same selection as a real number, for budgets so small that m exceeds
/// integer range. Minimal where exactly representable; otherwise the value
/// carries a relative upward guard of 1e-9 so both conditions still hold.
double select_start_real(double epsilon);

/// Certified upper bound on sum_{r > n_last} r^-2 (explicit terms up to 10^6
/// plus the integral remainder). Monotone decreasing in n_last.
double truncation_tail(double n_last);

/// Finite prefix of the deleted-disc union for levels m..n_max, carrying the
/// certified budget of the full infinite object: realized + tail < epsilon.
struct UnitCheese {
    double epsilon = 0.0;
    std::int64_t m = 0;
    int n_max = 0;
    std::vector<LevelFamily> families;
    double realized = 0.0; // sum radius/s0^2 over included discs, s0 = cross distance
    double tail = 0.0;     // truncation_tail(n_max)

    [[nodiscard]] std::int64_t disc_count() const;
    [[nodiscard]] std::vector<Disc> all_discs() const;
};

/// Throws BudgetError when n_max < the selected start index or when
/// realized + tail fails to come in under epsilon; ResourceError on disc cap.
UnitCheese build_unit_cheese(double epsilon, int n_max,
                             std::int64_t disc_cap = kDefaultDiscCap);

/// Images a + r*z of the unit discs under the affine map onto target (a, r).
/// Budget law: budget_sum(images, Cross(a)) == budget_sum(unit, Cross(0)) / r.
std::vector<Disc> transplant(const UnitCheese& u, const Disc& target);

/// Concrete per-host budget allowance: half the admissible strict bound,
/// 2^(-l-2) * C0 * factor with factor = dist(host disc, boundary of Q)^2 for
/// Interior, dist(host disc, corner set)^2 for Edge, 1 for Corner. The factor
/// is evaluated in exact rational arithmetic. Throws DegenerateError if it
/// vanishes (impossible for classified hosts; defensive).
double epsilon_for_index(const AdmissibleDisc& host, double C0);

/// Which construction layer deleted a disc.
struct Provenance {
    enum class Layer { Transplant, Provider };
    Layer layer = Layer::Transplant;
    std::int64_t host = 0; // Transplant: host enumeration index l; Provider: scale level n
    std::int64_t sub = 0;  // Transplant: level r of the unit factor; Provider: disc index k

    friend bool operator==(const Provenance& a, const Provenance& b) {
        return a.layer == b.layer && a.host == b.host && a.sub == b.sub;
    }
};

struct Deletion {
    Disc disc;
    Provenance origin;
};

/// Per-host accounting row. `charged` bounds the cross budget of the FULL
/// infinite transplanted family (realized discs plus certified truncation),
/// and is what the global ledger sums; it never exceeds `epsilon`.
struct TransplantRecord {
    AdmissibleDisc host;
    double epsilon = 0.0;
    double unit_epsilon = 0.0; // epsilon * host radius (allowance before scaling)
    double start = 0.0;        // selected start level; real-valued, often huge
    int levels_lo = 0;         // materialized level range; empty when lo > hi
    int levels_hi = -1;
    std::int64_t retained = 0;  // images kept (closure meets int Q)
    std::int64_t discarded = 0; // images dropped as no-op deletions
    double realized = 0.0;      // sum radius/s1^2 over ALL images, s1 = cross at host center
    double charged = 0.0;       // realized + scaled truncation tail
};

struct Ledger {
    double transplant_charged = 0.0;       // sum of TransplantRecord.charged
    double transplant_boundary = 0.0;      // sum radius/dist(disc, bdQ)^2, retained discs
    double provider_length = 0.0;          // sum 2*pi*radius over provider discs
    double provider_integral = 0.0;        // sum 2*pi*radius/dist(disc, bdQ)^2
    double combined_integral = 0.0;        // provider_integral + 2*pi*transplant_boundary

    friend bool operator==(const Ledger&, const Ledger&) = default;
};

struct BuildCaps {
    int n_cap = 9;                           // highest level materialized per host
    std::int64_t disc_cap = kDefaultDiscCap; // total deletion cap
    std::int64_t scan_cap = 50'000'000;      // enumeration candidate cap

    friend bool operator==(const BuildCaps&, const BuildCaps&) = default;
};

/// The square minus a tagged deletion list, with budget bookkeeping.
struct CheeseConfig {
    Square square = unit_square();
    double C = 0.0;        // combined integral budget constant; 0 when only the
                           // boundary layer was built
    double C0 = 0.0;       // boundary budget constant
    std::int64_t L = 0;    // host discs enumerated
    int n_levels = 0;      // provider scale levels
    std::uint64_t seed = 0;
    BuildCaps caps;
    std::vector<TransplantRecord> transplants;
    std::vector<Deletion> deletions;
    Ledger ledger;
};

/// Builds the boundary-budget layer: enumerates L host discs, selects per-host
/// allowances epsilon_l, transplants a unit cheese into every host whose start
/// index fits under caps.n_cap, and charges the allowance (with certified
/// truncation) for the rest. Verifies on return that the summed charges stay
/// under C0 and that every retained disc clears the square boundary.
CheeseConfig build_regular_cheese(double C0, std::int64_t L,
                                  const BuildCaps& caps = {});

/// Scale of the n-th nested square, n/(n+1).
double level_scale(int n);

/// Boundary-length allowance for provider discs at level n: 2^-(n+1) C (1-L_n)^2.
double length_budget(int n, double C);

/// Supplies the deleted Jordan domains (modeled as discs) for one nested
/// square: level, its scale L_n, and the length allowance. Every returned
/// disc must lie inside L_n*Q and the radii must satisfy
/// sum 2*pi*radius < max_total_length.
using DiscProvider =
    std::function<std::vector<Disc>(int level, double scale, double max_total_length)>;

/// Deterministic stand-in provider: three non-overlapping discs per level,
/// radius max_total_length/(12*pi) (so half the allowance is used), placed by
/// a seeded mt19937_64 inside the scaled square.
DiscProvider stub_provider(std::uint64_t seed);

/// Provider that deletes nothing.
DiscProvider empty_provider();

/// Full two-layer assembly with C0 = C/(4*pi): the boundary layer from
/// build_regular_cheese plus provider discs for levels 1..n_levels. Checks the
/// per-level length budgets, containment in the scaled squares, and the
/// combined ledger bound provider_integral + 2*pi*transplant sums <= C.
CheeseConfig assemble_cheese(double C, std::int64_t L, int n_levels,
                             const DiscProvider& provider, std::uint64_t seed,
                             const BuildCaps& caps = {});

} // namespace cheese
