#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hkbound/bigint.hpp"
#include "hkbound/field.hpp"

namespace hk {

// N_q(P^N) = q^N + ... + q + 1.
BigInt proj_count_big(int N, uint64_t q);
// Convenience for enumeration sizes; throws if the count leaves 64 bits.
uint64_t proj_count(int N, uint64_t q);

// A point of P^N(F_q), normalized so the first nonzero coordinate is 1.
struct ProjPoint {
    FieldPtr field;
    int ambient = 0;
    std::vector<uint32_t> coords; // length ambient+1

    static ProjPoint make(FieldPtr field, std::vector<uint32_t> coords);
    // "(c0:c1:...:cN)" with field literal coordinates.
    static ProjPoint parse(const FieldPtr& field, std::string_view text);
    std::string str() const;

    bool operator==(const ProjPoint& o) const {
        return ambient == o.ambient && coords == o.coords && same_field(field, o.field);
    }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const { return coords < o.coords; }
};

// A projective k-subspace of P^N, held as the unique reduced row-echelon
// basis of its underlying (k+1)-dimensional linear space.
struct LinearSubspace {
    FieldPtr field;
    int ambient = 0;
    int dim = 0;                             // projective dimension k
    std::vector<std::vector<uint32_t>> rows; // (k+1) x (ambient+1), RREF

    static LinearSubspace from_rows(FieldPtr field, int ambient,
                                    std::vector<std::vector<uint32_t>> rows);
    static LinearSubspace from_points(std::span<const ProjPoint> pts);

    bool contains(const ProjPoint& p) const;
    bool contains_subspace(const LinearSubspace& s) const;
    // The proj_count(dim, q) rational points, deterministic order.
    std::vector<ProjPoint> rational_points() const;
    // Canonical encoding; equal subspaces yield equal keys.
    std::string key() const;

    bool operator==(const LinearSubspace& o) const {
        return ambient == o.ambient && dim == o.dim && rows == o.rows &&
               same_field(field, o.field);
    }
    bool operator<(const LinearSubspace& o) const { return rows < o.rows; }
};

// All points of P^N(F_q): grouped by position of the leading 1, then
// lexicographic in the free coordinates under the field's canonical element
// order. This order pins shard boundaries, so it must never change.
std::vector<ProjPoint> enumerate_points(int N, const FieldPtr& field);

// The unique line through two distinct points.
LinearSubspace line_through(const ProjPoint& p, const ProjPoint& q);

// Every projective k-subspace of P^N exactly once via RREF representatives.
std::vector<LinearSubspace> subspaces_of_dim(int N, int k, const FieldPtr& field);

// All k'-subspaces containing s (k' > s.dim), canonically ordered.
std::vector<LinearSubspace> subspaces_containing(const LinearSubspace& s, int k);

// Planes through a line; count equals proj_count(N-2, q).
std::vector<LinearSubspace> planes_containing(const LinearSubspace& line);

// Row reduction helper shared with other modules: returns the RREF of the
// given matrix (rows of equal length) and drops zero rows.
std::vector<std::vector<uint32_t>> rref(const FieldSpec& f,
                                        std::vector<std::vector<uint32_t>> rows);

} // namespace hk
