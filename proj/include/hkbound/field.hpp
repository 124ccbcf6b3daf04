#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hkbound/errors.hpp"

namespace hk {

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

// An element is identified by its canonical index: the rank of its reduced
// coefficient vector in counting order (constant coefficient least
// significant). Index 0 is zero, index 1 is one in every field; for prime
// fields the index equals the residue. Packing the canonical vector into a
// rank keeps equality a single integer compare while the representation
// stays the reduced coefficient vector, not a discrete log.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldPtr spec, uint32_t index);

    const FieldPtr& spec() const { return spec_; }
    uint32_t index() const { return idx_; }
    bool is_zero() const { return idx_ == 0; }

    // Coefficient vector over the base field, length = extension degree.
    std::vector<FieldElement> coefficients() const;
    // Prime fields only: the residue in [0, p).
    int64_t residue() const;

    std::string str() const;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement pow(uint64_t e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    FieldPtr spec_;
    uint32_t idx_ = 0;
};

// Immutable description of F_{p^r} or of a tower step F_{q^m} over a base
// spec. Construction verifies the modulus is monic irreducible by trial
// division; specs are memoized so identical constructions share one object.
// All member functions are const and safe to call concurrently.
class FieldSpec : public std::enable_shared_from_this<FieldSpec> {
public:
    static constexpr uint64_t kMaxOrder = 1ull << 20;

    static FieldPtr prime(int64_t p);
    // F_{p^r} over F_p with the deterministic (lexicographically smallest
    // monic irreducible) modulus.
    static FieldPtr prime_power(int64_t p, int r);
    // q = p^r recognised from the integer.
    static FieldPtr from_order(uint64_t q);
    // Tower F_{q^m} over base; m == 1 returns base itself.
    static FieldPtr extension(const FieldPtr& base, int m);
    // Explicit monic modulus (degree >= 2, coefficients as base indices,
    // length m+1, leading 1); verified irreducible.
    static FieldPtr extension_with_modulus(const FieldPtr& base,
                                           const std::vector<uint32_t>& modulus);
    // "p", "p^r" or a plain prime power like "4".
    static FieldPtr parse_name(std::string_view name);

    int64_t characteristic() const { return p_; }
    uint64_t order() const { return order_; }
    // Degree over the immediate base (1 for prime fields).
    int degree() const { return r_; }
    int absolute_degree() const { return abs_degree_; }
    const FieldPtr& base() const { return base_; }
    bool is_prime_field() const { return base_ == nullptr; }
    // Monic modulus as base-field indices, constant first; empty for primes.
    const std::vector<uint32_t>& modulus() const { return modulus_; }
    // Structural identity; equal signatures mean interchangeable specs.
    const std::string& signature() const { return signature_; }
    std::string name() const;

    // Arithmetic on canonical indices.
    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    // Integer k reduced mod p, as a constant of this field.
    uint32_t from_int(int64_t k) const;
    // Base-field index -> index here (constant embedding; identity by the
    // positional indexing).
    uint32_t embed(uint32_t base_index) const;

    FieldElement element(uint32_t index) const;
    FieldElement zero() const { return element(0); }
    FieldElement one() const { return element(1); }
    // Class of the adjoined variable (extensions only).
    FieldElement generator() const;
    // All q elements, canonical order (zero first).
    std::vector<FieldElement> enumerate() const;

    // Field literal syntax: decimal for prime fields, polynomials in `g`
    // (and `h` for a second tower level) otherwise.
    std::string literal(uint32_t index) const;
    uint32_t parse_literal(std::string_view text) const;

    std::vector<uint32_t> to_base_vector(uint32_t index) const;
    uint32_t from_base_vector(const std::vector<uint32_t>& coeffs) const;

    ~FieldSpec();

private:
    FieldSpec() = default;
    void init_tables();
    uint32_t mul_raw(uint32_t a, uint32_t b) const;
    uint32_t inv_raw(uint32_t a) const;

    int64_t p_ = 0;
    int r_ = 1;
    int abs_degree_ = 1;
    uint64_t order_ = 0;
    FieldPtr base_;
    std::vector<uint32_t> modulus_;
    std::string signature_;
    int tower_depth_ = 0; // 0 = prime, 1 = F_{p^r}, 2 = tower over that

    // Fast path: full operation tables for small fields.
    bool tabled_ = false;
    std::vector<uint32_t> add_tab_;
    std::vector<uint32_t> mul_tab_;
    std::vector<uint32_t> inv_tab_;
    std::vector<uint32_t> neg_tab_;

    friend struct FieldSpecAccess;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->signature() == b->signature();
}

inline void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!same_field(a, b))
        throw FieldMismatchError("field spec mismatch: " +
                                 (a ? a->signature() : std::string("null")) + " vs " +
                                 (b ? b->signature() : std::string("null")));
}

// Univariate helpers over an arbitrary field, coefficients as indices in
// ascending degree order. Used for modulus construction and shared with
// tests.
namespace upoly {
std::vector<uint32_t> trim(std::vector<uint32_t> v);
std::vector<uint32_t> mul(const FieldSpec& f, const std::vector<uint32_t>& a,
                          const std::vector<uint32_t>& b);
// Remainder of a by b (b nonzero).
std::vector<uint32_t> rem(const FieldSpec& f, std::vector<uint32_t> a,
                          const std::vector<uint32_t>& b);
bool is_irreducible(const FieldSpec& f, const std::vector<uint32_t>& poly);
} // namespace upoly

} // namespace hk
