#pragma once

#include <cstdint>
#include <vector>

#include "hkbound/poly.hpp"

namespace hk {

// Dense F_2 evaluator: one bit per point of P^N(F_2). The value vector of a
// polynomial is the XOR of the masks of its monomials, so point counting is
// a handful of word ops. Masks are cached per (N, monomial).
class F2Grid {
public:
    explicit F2Grid(int N);

    int ambient() const { return N_; }
    size_t npoints() const { return npts_; }
    size_t words() const { return words_; }
    // Coordinates of point i (0/1 entries, length N+1).
    const std::vector<uint8_t>& point(size_t i) const { return pts_[i]; }

    std::vector<uint64_t> monomial_mask(const Monomial& m) const;
    // XOR of monomial masks: bit i set iff F(point i) != 0.
    std::vector<uint64_t> value_mask(const MultiPoly& F) const;
    size_t count_zeros(const std::vector<uint64_t>& mask) const;
    int64_t count_points(const MultiPoly& F) const;

private:
    int N_;
    size_t npts_;
    size_t words_;
    std::vector<std::vector<uint8_t>> pts_;
};

// Shared per-ambient grids (threadsafe, built once).
const F2Grid& f2_grid(int N);

// Point count of V(F) over F_2 through the bitsliced path; F must live over
// the two-element field.
int64_t bitsliced_point_count(const MultiPoly& F);

} // namespace hk
