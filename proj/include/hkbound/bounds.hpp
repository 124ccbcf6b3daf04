#pragma once

#include <optional>

#include "hkbound/bigint.hpp"
#include "hkbound/geometry.hpp"

namespace hk {

// theta_n^{d,q} = (d-1) q^{(n+1)/2} N_q(P^{(n-1)/2}) + N_q(P^{(n-1)/2}),
// defined for odd n >= 3 only.
BigInt theta(int n, int64_t d, uint64_t q);

// (d-1) q^k N_q(P^{n-k}) + N_q(P^k) for 0 <= k <= n-1.
BigInt k_bound(int n, int64_t d, uint64_t q, int k);

// Nonsingular plane curves without rational lines: generic bound (d-1)q+1;
// the single exceptional value (d-1)q+2 exists only at (d,q) = (4,4).
struct CurveBound {
    BigInt generic;
    std::optional<BigInt> exceptional;
};
CurveBound curve_bound(int64_t d, uint64_t q);

struct ConeWitness {
    ProjPoint point;
    int64_t base_points = 0;
    MultiPoly base_poly;
};

struct BoundReport {
    int n = 0;
    int64_t d = 0;
    uint64_t q = 0;
    int64_t points = 0;
    int k_x = -1;
    std::optional<BigInt> theta_value; // odd n >= 3 only
    BigInt k_bound_value;              // at k = max(k_x, 0)
    BigInt elementary_bound;           // k = n-1
    bool within_theta = true;
    bool theta_equality = false;
    bool within_k_bound = true;
    std::optional<ConeWitness> witness; // present when theta_equality and a
                                        // matching cone section exists
    // Set when theta equality holds on a nonsingular hypersurface yet no
    // cone point with the required base count exists; that would contradict
    // the equality characterization and must be surfaced, never swallowed.
    bool contradiction = false;
};

// Full verdict for a hypersurface: exact count, Thas invariant, bounds and
// the equality diagnostics.
BoundReport bound_report(const Hypersurface& X);

} // namespace hk
