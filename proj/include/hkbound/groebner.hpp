#pragma once

#include <vector>

#include "hkbound/poly.hpp"

namespace hk {

constexpr int kDefaultDegreeCap = 30;

// Homogeneous polynomial system over one field.
struct Ideal {
    FieldPtr field;
    int nvars = 0;
    std::vector<MultiPoly> gens;

    static Ideal make(std::vector<MultiPoly> gens);
};

// Reduced Groebner basis under grevlex: monic, auto-reduced, sorted by
// leading term. Reduced bases are unique, so equality of ideals is equality
// of bases.
class GroebnerBasis {
public:
    const std::vector<MultiPoly>& polys() const { return basis_; }
    const Ideal& ideal() const { return origin_; }

private:
    std::vector<MultiPoly> basis_;
    Ideal origin_;
    friend GroebnerBasis buchberger(const Ideal&, int);
};

// Buchberger with the coprime and chain pair criteria, normal selection
// (lowest lcm degree first). Throws DegreeCapError instead of truncating.
GroebnerBasis buchberger(const Ideal& ideal, int degree_cap = kDefaultDegreeCap);

// Remainder of F under full division by the basis; zero iff F is in the ideal.
MultiPoly normal_form(const MultiPoly& F, const GroebnerBasis& G);
MultiPoly normal_form(const MultiPoly& F, const std::vector<MultiPoly>& divisors);

// True iff V(ideal) over the algebraic closure contains no point besides the
// origin: every variable must show a pure power among the leading terms of
// the reduced basis.
bool is_projectively_empty(const Ideal& ideal, int degree_cap = kDefaultDegreeCap);

} // namespace hk
