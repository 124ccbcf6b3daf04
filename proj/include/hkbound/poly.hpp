#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hkbound/field.hpp"
#include "hkbound/projgeom.hpp"

namespace hk {

// Variables x0..x9 per the text grammar.
constexpr int kMaxVars = 10;

struct Monomial {
    std::array<uint8_t, kMaxVars> e{};
    uint8_t deg = 0;

    static Monomial one() { return Monomial{}; }
    static Monomial var(int i, int exp = 1);

    Monomial times(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    Monomial divided_by(const Monomial& o) const;
    Monomial lcm(const Monomial& o) const;
    bool coprime(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Graded reverse-lexicographic order.
bool grevlex_less(const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    uint32_t coeff = 0;
};

// Sparse multivariate polynomial with terms sorted descending under grevlex
// and no zero coefficients. Values are immutable after construction.
class MultiPoly {
public:
    MultiPoly() = default;
    static MultiPoly zero(FieldPtr field, int nvars);
    static MultiPoly constant(FieldPtr field, int nvars, uint32_t c);
    static MultiPoly monomial(FieldPtr field, int nvars, const Monomial& m, uint32_t c);
    // Terms in any order, duplicates combined, zeros dropped.
    static MultiPoly from_terms(FieldPtr field, int nvars, std::vector<Term> terms);

    const FieldPtr& field() const { return field_; }
    int nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Total degree (max over terms); -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;
    bool uses_var(int i) const;
    uint32_t coeff(const Monomial& m) const;
    const Term& leading_term() const; // grevlex-largest

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly negated() const;
    MultiPoly scaled(uint32_t c) const;
    MultiPoly monic() const; // leading coefficient normalized to 1
    // Product with a single term; order-preserving, linear time.
    MultiPoly times_term(const Monomial& m, uint32_t c) const;

    uint32_t evaluate(std::span<const uint32_t> coords) const;
    uint32_t evaluate(const ProjPoint& p) const;
    MultiPoly derivative(int var) const;

    // Same coefficients viewed in a tower extension of the current field.
    MultiPoly lifted_to(const FieldPtr& ext) const;

    bool operator==(const MultiPoly& o) const;
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

private:
    FieldPtr field_;
    int nvars_ = 0;
    std::vector<Term> terms_;
};

// Invertible coordinate change of P^N; apply_projectivity(F, T) substitutes
// x_j -> sum_k mat[j][k] * y_k, i.e. composes F with the map y -> mat*y.
struct Projectivity {
    FieldPtr field;
    int n = 0; // matrix is (n+1) x (n+1)
    std::vector<uint32_t> mat;
    std::vector<uint32_t> inv;

    static Projectivity from_matrix(FieldPtr field, int n, std::vector<uint32_t> mat);
    static Projectivity identity(FieldPtr field, int n);
    Projectivity inverse() const;
    uint32_t at(int r, int c) const { return mat[static_cast<size_t>(r) * (n + 1) + c]; }
};

MultiPoly apply_projectivity(const MultiPoly& F, const Projectivity& T);

// F composed with the parametrization x = sum_i t_i * rows[i]; result lives
// in S.dim+1 variables. Zero iff the subspace lies inside V(F).
MultiPoly restrict_to_subspace(const MultiPoly& F, const LinearSubspace& S);

// Substitute a variable by zero and drop it (variables above shift down).
MultiPoly substitute_zero(const MultiPoly& F, int var);

// Homogeneous F of degree d with no x0^d term decomposes uniquely as
// sum_j x0^(d-j) F_j with F_j homogeneous of degree j in the remaining
// variables (reindexed to x0..x_{v-2}).
struct X0Decomposition {
    int degree = 0;
    std::vector<MultiPoly> comps; // comps[j] has degree j; size degree+1
    int min_nonzero = -1;         // smallest j with comps[j] != 0
};
X0Decomposition x0_decomposition(const MultiPoly& F);
MultiPoly x0_recompose(const X0Decomposition& dec, const FieldPtr& field, int nvars);

// Maximal multiset of rational linear factors of a ternary form, found by
// trial division against all normalized linear forms; factors * remainder
// reproduces F exactly.
struct LinearSplit {
    std::vector<MultiPoly> factors;
    MultiPoly remainder;
};
LinearSplit linear_factor_split(const MultiPoly& F);

// Exact single-divisor division: F = Q*D + R with no term of R divisible by
// the leading term of D.
std::pair<MultiPoly, MultiPoly> divide_single(const MultiPoly& F, const MultiPoly& D);

// Text grammar: terms joined by '+'; a term is [coeff*] var(^exp)?(*...)*;
// variables x0..x9; coefficients in field literal syntax (parenthesized when
// they contain '+' themselves). nvars < 0 infers the variable count.
MultiPoly parse_poly(const FieldPtr& field, std::string_view text, int nvars = -1);
MultiPoly parse_homogeneous_poly(const FieldPtr& field, std::string_view text, int nvars = -1);
std::string format_poly(const MultiPoly& F);

} // namespace hk
