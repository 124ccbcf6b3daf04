#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hkbound/poly.hpp"

namespace hk {

// Flattened point list of P^N(F) plus per-point coordinate power tables, so
// repeated polynomial evaluation over the same grid is a table-lookup loop.
// Instances are immutable and shared through a registry.
class EvalGrid {
public:
    EvalGrid(FieldPtr field, int N, int maxdeg);

    const FieldPtr& field() const { return field_; }
    int ambient() const { return N_; }
    int maxdeg() const { return maxdeg_; }
    size_t npoints() const { return npts_; }

    const uint32_t* coords(size_t pt) const { return &coords_[pt * stride_]; }
    // value of coordinate j raised to e at point pt
    uint32_t power(size_t pt, int j, int e) const {
        return powers_[(pt * stride_ + static_cast<size_t>(j)) * (static_cast<size_t>(maxdeg_) + 1) +
                       static_cast<size_t>(e)];
    }
    uint32_t eval(const MultiPoly& F, size_t pt) const;
    ProjPoint point(size_t pt) const;

private:
    FieldPtr field_;
    int N_;
    int maxdeg_;
    size_t npts_;
    size_t stride_; // N+1
    std::vector<uint32_t> coords_;
    std::vector<uint32_t> powers_;
};

// Registry keyed by (field signature, N); the stored grid's maxdeg grows on
// demand. Safe for concurrent use; the shared_ptr keeps a replaced grid
// alive for holders of the old one.
std::shared_ptr<const EvalGrid> eval_grid(const FieldPtr& field, int N, int maxdeg);

} // namespace hk
