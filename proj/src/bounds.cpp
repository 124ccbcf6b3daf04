#include "hkbound/bounds.hpp"

namespace hk {

BigInt theta(int n, int64_t d, uint64_t q) {
    if (n < 3 || n % 2 == 0) throw PreconditionError("theta is defined for odd n >= 3 only");
    if (d < 2) throw PreconditionError("degree must be >= 2");
    const int half = (n - 1) / 2;
    const BigInt pc = proj_count_big(half, q);
    return BigInt(d - 1) * big_pow(BigInt(q), static_cast<unsigned>((n + 1) / 2)) * pc + pc;
}

BigInt k_bound(int n, int64_t d, uint64_t q, int k) {
    if (n < 1) throw PreconditionError("dimension must be >= 1");
    if (d < 2) throw PreconditionError("degree must be >= 2");
    if (k < 0 || k > n - 1) throw PreconditionError("need 0 <= k <= n-1");
    return BigInt(d - 1) * big_pow(BigInt(q), static_cast<unsigned>(k)) * proj_count_big(n - k, q) +
           proj_count_big(k, q);
}

CurveBound curve_bound(int64_t d, uint64_t q) {
    if (d < 2) throw PreconditionError("degree must be >= 2");
    CurveBound b;
    b.generic = BigInt(d - 1) * q + 1;
    if (d == 4 && q == 4) b.exceptional = BigInt(d - 1) * q + 2;
    return b;
}

BoundReport bound_report(const Hypersurface& X) {
    BoundReport rep;
    rep.n = X.dim;
    rep.d = X.degree;
    rep.q = X.field->order();
    rep.points = point_count(X);
    rep.k_x = thas_invariant(X);
    // k_X = n happens exactly when X contains a hyperplane; the bound is then
    // evaluated at k = n-1, the elementary bound, which holds unconditionally.
    const int k_for_bound = std::min(std::max(rep.k_x, 0), rep.n - 1);
    rep.k_bound_value = k_bound(rep.n, rep.d, rep.q, k_for_bound);
    rep.elementary_bound = k_bound(rep.n, rep.d, rep.q, rep.n - 1);
    rep.within_k_bound = BigInt(rep.points) <= rep.k_bound_value;

    if (rep.n >= 3 && rep.n % 2 == 1) {
        rep.theta_value = theta(rep.n, rep.d, rep.q);
        rep.within_theta = BigInt(rep.points) <= *rep.theta_value;
        rep.theta_equality = BigInt(rep.points) == *rep.theta_value;
        if (rep.theta_equality) {
            // Equality demands a cone point whose base has the exact count:
            // (d-1)q+1 for n = 3, theta_{n-2} for odd n >= 5.
            BigInt required = rep.n == 3 ? BigInt(rep.d - 1) * rep.q + 1
                                         : theta(rep.n - 2, rep.d, rep.q);
            for (const auto& P : rational_points(X)) {
                TangentSectionReport ts;
                try {
                    ts = tangent_section(X, P);
                } catch (const PreconditionError&) {
                    continue; // singular point: no tangent section
                }
                if (!ts.is_cone) continue;
                const int64_t base_count = point_count(*ts.base);
                if (BigInt(base_count) == required) {
                    rep.witness = ConeWitness{P, base_count, ts.base->F};
                    break;
                }
            }
            if (!rep.witness && is_nonsingular(X)) rep.contradiction = true;
        }
    }
    return rep;
}

} // namespace hk
