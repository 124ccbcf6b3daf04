#include "hkbound/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace hk {

namespace {

constexpr uint64_t kTableLimit = 1024; // full op tables up to this order

bool is_prime_int(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::mutex g_registry_mutex;
std::map<std::string, FieldPtr>& registry() {
    static std::map<std::string, FieldPtr> r;
    return r;
}

struct LiteralCursor {
    std::string_view s;
    size_t i = 0;
    bool done() const { return i >= s.size(); }
    char peek() const { return s[i]; }
};

} // namespace

struct FieldSpecAccess {
    static FieldSpec* make() { return new FieldSpec(); }
    static void set(FieldSpec& f, int64_t p, int r, int abs_deg, uint64_t order,
                    FieldPtr base, std::vector<uint32_t> modulus, std::string sig,
                    int depth) {
        f.p_ = p;
        f.r_ = r;
        f.abs_degree_ = abs_deg;
        f.order_ = order;
        f.base_ = std::move(base);
        f.modulus_ = std::move(modulus);
        f.signature_ = std::move(sig);
        f.tower_depth_ = depth;
        f.init_tables();
    }
};

FieldSpec::~FieldSpec() = default;

// ---------------------------------------------------------------------------
// univariate helpers

namespace upoly {

std::vector<uint32_t> trim(std::vector<uint32_t> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
}

std::vector<uint32_t> mul(const FieldSpec& f, const std::vector<uint32_t>& a,
                          const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    return trim(std::move(out));
}

std::vector<uint32_t> rem(const FieldSpec& f, std::vector<uint32_t> a,
                          const std::vector<uint32_t>& b) {
    a = trim(std::move(a));
    auto bt = trim(b);
    if (bt.empty()) throw PreconditionError("polynomial division by zero");
    const uint32_t lead_inv = f.inv(bt.back());
    while (a.size() >= bt.size()) {
        uint32_t c = f.mul(a.back(), lead_inv);
        size_t shift = a.size() - bt.size();
        for (size_t t = 0; t < bt.size(); ++t)
            a[shift + t] = f.sub(a[shift + t], f.mul(c, bt[t]));
        a = trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

bool is_irreducible(const FieldSpec& f, const std::vector<uint32_t>& poly) {
    auto pt = trim(poly);
    if (pt.size() < 2) return false; // constants are not irreducible
    const int m = static_cast<int>(pt.size()) - 1;
    if (m == 1) return true;
    const uint64_t q = f.order();
    // Trial division by every monic polynomial of degree 1..m/2; a proper
    // factorization always contains such a factor.
    for (int e = 1; 2 * e <= m; ++e) {
        uint64_t count = 1;
        for (int t = 0; t < e; ++t) count *= q;
        std::vector<uint32_t> div(static_cast<size_t>(e) + 1, 0);
        div[static_cast<size_t>(e)] = 1;
        for (uint64_t k = 0; k < count; ++k) {
            uint64_t v = k;
            for (int t = 0; t < e; ++t) {
                div[static_cast<size_t>(t)] = static_cast<uint32_t>(v % q);
                v /= q;
            }
            if (rem(f, pt, div).empty()) return false;
        }
    }
    return true;
}

} // namespace upoly

// ---------------------------------------------------------------------------
// construction

FieldPtr FieldSpec::prime(int64_t p) {
    if (!is_prime_int(p)) throw PreconditionError("characteristic must be prime: " + std::to_string(p));
    if (static_cast<uint64_t>(p) > kMaxOrder) throw PreconditionError("field order beyond supported scale");
    std::string key = "F" + std::to_string(p);
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry().find(key);
    if (it != registry().end()) return it->second;
    FieldPtr spec(FieldSpecAccess::make());
    FieldSpecAccess::set(const_cast<FieldSpec&>(*spec), p, 1, 1, static_cast<uint64_t>(p),
                         nullptr, {}, key, 0);
    registry().emplace(key, spec);
    return spec;
}

FieldPtr FieldSpec::extension_with_modulus(const FieldPtr& base,
                                           const std::vector<uint32_t>& modulus) {
    if (!base) throw PreconditionError("null base spec");
    auto mod = upoly::trim(modulus);
    if (mod.size() < 3) throw PreconditionError("extension modulus must have degree >= 2");
    if (mod.back() != 1) throw PreconditionError("extension modulus must be monic");
    for (uint32_t c : mod)
        if (c >= base->order()) throw PreconditionError("modulus coefficient out of range");
    const int m = static_cast<int>(mod.size()) - 1;
    uint64_t order = 1;
    for (int i = 0; i < m; ++i) {
        order *= base->order();
        if (order > kMaxOrder) throw PreconditionError("field order beyond supported scale");
    }
    if (!upoly::is_irreducible(*base, mod)) throw PreconditionError("extension modulus is reducible");

    std::string sig = base->signature() + "[";
    for (size_t i = 0; i < mod.size(); ++i) sig += (i ? "," : "") + std::to_string(mod[i]);
    sig += "]";

    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry().find(sig);
    if (it != registry().end()) return it->second;
    FieldPtr spec(FieldSpecAccess::make());
    FieldSpecAccess::set(const_cast<FieldSpec&>(*spec), base->characteristic(), m,
                         base->absolute_degree() * m, order, base, mod, sig,
                         base->is_prime_field() ? 1 : 2);
    registry().emplace(sig, spec);
    return spec;
}

FieldPtr FieldSpec::extension(const FieldPtr& base, int m) {
    if (!base) throw PreconditionError("null base spec");
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    if (m == 1) return base;
    // Deterministic modulus: scan monic degree-m polynomials in canonical
    // counting order (constant coefficient fastest) for the first
    // irreducible one.
    const uint64_t q = base->order();
    uint64_t count = 1;
    for (int t = 0; t < m; ++t) {
        count *= q;
        if (count > (kMaxOrder << 4)) throw PreconditionError("extension beyond supported scale");
    }
    std::vector<uint32_t> cand(static_cast<size_t>(m) + 1, 0);
    cand[static_cast<size_t>(m)] = 1;
    for (uint64_t k = 0; k < count; ++k) {
        uint64_t v = k;
        for (int t = 0; t < m; ++t) {
            cand[static_cast<size_t>(t)] = static_cast<uint32_t>(v % q);
            v /= q;
        }
        if (upoly::is_irreducible(*base, cand)) return extension_with_modulus(base, cand);
    }
    throw Error("no irreducible modulus found (unreachable)");
}

FieldPtr FieldSpec::prime_power(int64_t p, int r) {
    if (r < 1) throw PreconditionError("extension degree must be >= 1");
    auto fp = prime(p);
    return r == 1 ? fp : extension(fp, r);
}

FieldPtr FieldSpec::from_order(uint64_t q) {
    if (q < 2) throw PreconditionError("field order must be >= 2");
    int64_t p = 2;
    while (static_cast<uint64_t>(p) * static_cast<uint64_t>(p) <= q && q % static_cast<uint64_t>(p) != 0) ++p;
    if (q % static_cast<uint64_t>(p) != 0) p = static_cast<int64_t>(q);
    int r = 0;
    uint64_t v = q;
    while (v > 1) {
        if (v % static_cast<uint64_t>(p) != 0)
            throw PreconditionError(std::to_string(q) + " is not a prime power");
        v /= static_cast<uint64_t>(p);
        ++r;
    }
    return prime_power(p, r);
}

FieldPtr FieldSpec::parse_name(std::string_view name) {
    std::string s;
    for (char c : name)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty field name");
    auto caret = s.find('^');
    try {
        if (caret != std::string::npos) {
            int64_t p = std::stoll(s.substr(0, caret));
            int r = std::stoi(s.substr(caret + 1));
            return prime_power(p, r);
        }
        return from_order(std::stoull(s));
    } catch (const std::logic_error&) {
        throw ParseError("bad field name: " + std::string(name));
    }
}

std::string FieldSpec::name() const {
    if (abs_degree_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(abs_degree_);
}

// ---------------------------------------------------------------------------
// arithmetic

void FieldSpec::init_tables() {
    if (order_ > kTableLimit) return;
    const uint32_t q = static_cast<uint32_t>(order_);
    neg_tab_.resize(q);
    inv_tab_.assign(q, 0);
    add_tab_.resize(static_cast<size_t>(q) * q);
    mul_tab_.resize(static_cast<size_t>(q) * q);
    if (is_prime_field()) {
        for (uint32_t a = 0; a < q; ++a) {
            neg_tab_[a] = (q - a) % q;
            for (uint32_t b = 0; b < q; ++b) {
                add_tab_[static_cast<size_t>(a) * q + b] = (a + b) % q;
                mul_tab_[static_cast<size_t>(a) * q + b] =
                    static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % q);
            }
        }
    } else {
        const uint64_t bq = base_->order();
        const size_t r = static_cast<size_t>(r_);
        std::vector<uint32_t> va(r), vb(r), vc(r);
        auto decode = [&](uint32_t x, std::vector<uint32_t>& v) {
            for (size_t i = 0; i < r; ++i) {
                v[i] = static_cast<uint32_t>(x % bq);
                x = static_cast<uint32_t>(x / bq);
            }
        };
        auto encode = [&](const std::vector<uint32_t>& v) {
            uint64_t x = 0;
            for (size_t i = r; i-- > 0;) x = x * bq + v[i];
            return static_cast<uint32_t>(x);
        };
        std::vector<uint32_t> prod(2 * r - 1);
        for (uint32_t a = 0; a < q; ++a) {
            decode(a, va);
            for (size_t i = 0; i < r; ++i) vc[i] = base_->neg(va[i]);
            neg_tab_[a] = encode(vc);
            for (uint32_t b = 0; b < q; ++b) {
                decode(b, vb);
                for (size_t i = 0; i < r; ++i) vc[i] = base_->add(va[i], vb[i]);
                add_tab_[static_cast<size_t>(a) * q + b] = encode(vc);
                // schoolbook product, then reduction by the monic modulus
                std::fill(prod.begin(), prod.end(), 0);
                for (size_t i = 0; i < r; ++i) {
                    if (va[i] == 0) continue;
                    for (size_t j = 0; j < r; ++j)
                        if (vb[j] != 0)
                            prod[i + j] = base_->add(prod[i + j], base_->mul(va[i], vb[j]));
                }
                for (size_t i = 2 * r - 2; i >= r && i < prod.size(); --i) {
                    uint32_t c = prod[i];
                    if (c == 0) continue;
                    prod[i] = 0;
                    for (size_t t = 0; t < r; ++t)
                        prod[i - r + t] = base_->sub(prod[i - r + t], base_->mul(c, modulus_[t]));
                }
                vc.assign(prod.begin(), prod.begin() + static_cast<long>(r));
                mul_tab_[static_cast<size_t>(a) * q + b] = encode(vc);
            }
        }
    }
    tabled_ = true;
    // Inverses by Fermat through the freshly built multiplication table.
    for (uint32_t a = 1; a < q; ++a) inv_tab_[a] = pow(a, order_ - 2);
}

uint32_t FieldSpec::add(uint32_t a, uint32_t b) const {
    if (tabled_) return add_tab_[static_cast<size_t>(a) * order_ + b];
    if (is_prime_field()) return static_cast<uint32_t>((static_cast<uint64_t>(a) + b) % order_);
    const uint64_t bq = base_->order();
    uint64_t out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        out += static_cast<uint64_t>(base_->add(static_cast<uint32_t>(a % bq),
                                                static_cast<uint32_t>(b % bq))) * mult;
        a = static_cast<uint32_t>(a / bq);
        b = static_cast<uint32_t>(b / bq);
        mult *= bq;
    }
    return static_cast<uint32_t>(out);
}

uint32_t FieldSpec::neg(uint32_t a) const {
    if (tabled_) return neg_tab_[a];
    if (is_prime_field()) return a == 0 ? 0 : static_cast<uint32_t>(order_ - a);
    const uint64_t bq = base_->order();
    uint64_t out = 0, mult = 1;
    for (int i = 0; i < r_; ++i) {
        out += static_cast<uint64_t>(base_->neg(static_cast<uint32_t>(a % bq))) * mult;
        a = static_cast<uint32_t>(a / bq);
        mult *= bq;
    }
    return static_cast<uint32_t>(out);
}

uint32_t FieldSpec::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FieldSpec::mul_raw(uint32_t a, uint32_t b) const {
    const uint64_t bq = base_->order();
    const size_t r = static_cast<size_t>(r_);
    std::vector<uint32_t> va = to_base_vector(a), vb = to_base_vector(b);
    std::vector<uint32_t> prod(2 * r - 1, 0);
    for (size_t i = 0; i < r; ++i) {
        if (va[i] == 0) continue;
        for (size_t j = 0; j < r; ++j)
            if (vb[j] != 0) prod[i + j] = base_->add(prod[i + j], base_->mul(va[i], vb[j]));
    }
    for (size_t i = 2 * r - 2; i >= r && i < prod.size(); --i) {
        uint32_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (size_t t = 0; t < r; ++t)
            prod[i - r + t] = base_->sub(prod[i - r + t], base_->mul(c, modulus_[t]));
    }
    uint64_t out = 0;
    for (size_t i = r; i-- > 0;) out = out * bq + prod[i];
    return static_cast<uint32_t>(out);
}

uint32_t FieldSpec::mul(uint32_t a, uint32_t b) const {
    if (tabled_) return mul_tab_[static_cast<size_t>(a) * order_ + b];
    if (is_prime_field()) return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % order_);
    return mul_raw(a, b);
}

uint32_t FieldSpec::pow(uint32_t a, uint64_t e) const {
    uint32_t result = 1, base = a;
    while (e) {
        if (e & 1ull) result = mul(result, base);
        base = mul(base, base);
        e >>= 1ull;
    }
    return result;
}

uint32_t FieldSpec::inv(uint32_t a) const {
    if (a == 0) throw DivisionByZeroError();
    if (tabled_) return inv_tab_[a];
    return pow(a, order_ - 2);
}

uint32_t FieldSpec::from_int(int64_t k) const {
    int64_t r = k % p_;
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
}

uint32_t FieldSpec::embed(uint32_t base_index) const {
    if (is_prime_field()) throw PreconditionError("prime field has no base to embed from");
    if (base_index >= base_->order()) throw PreconditionError("embed index out of range");
    return base_index; // constants occupy the low positional digit
}

std::vector<uint32_t> FieldSpec::to_base_vector(uint32_t index) const {
    if (is_prime_field()) return {index};
    const uint64_t bq = base_->order();
    std::vector<uint32_t> v(static_cast<size_t>(r_));
    for (int i = 0; i < r_; ++i) {
        v[static_cast<size_t>(i)] = static_cast<uint32_t>(index % bq);
        index = static_cast<uint32_t>(index / bq);
    }
    return v;
}

uint32_t FieldSpec::from_base_vector(const std::vector<uint32_t>& coeffs) const {
    if (coeffs.size() != static_cast<size_t>(r_))
        throw PreconditionError("coefficient vector length mismatch");
    const uint64_t bq = is_prime_field() ? order_ : base_->order();
    uint64_t x = 0;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= bq) throw PreconditionError("coefficient out of range");
        x = x * bq + coeffs[i];
    }
    return static_cast<uint32_t>(x);
}

FieldElement FieldSpec::element(uint32_t index) const {
    if (index >= order_) throw PreconditionError("element index out of range");
    return FieldElement(shared_from_this(), index);
}

FieldElement FieldSpec::generator() const {
    if (is_prime_field()) throw PreconditionError("prime field has no adjoined generator");
    return element(static_cast<uint32_t>(base_->order()));
}

std::vector<FieldElement> FieldSpec::enumerate() const {
    std::vector<FieldElement> out;
    out.reserve(order_);
    for (uint32_t i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
}

// ---------------------------------------------------------------------------
// literals

std::string FieldSpec::literal(uint32_t index) const {
    if (is_prime_field()) return std::to_string(index);
    if (tower_depth_ > 2) throw PreconditionError("literals support at most two tower levels");
    const char gen = tower_depth_ == 1 ? 'g' : 'h';
    auto coeffs = to_base_vector(index);
    std::string out;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        std::string c = base_->literal(coeffs[i]);
        std::string term;
        if (i == 0) {
            term = (c.find('+') != std::string::npos) ? "(" + c + ")" : c;
        } else {
            std::string gpart = std::string(1, gen) + (i > 1 ? "^" + std::to_string(i) : "");
            if (c == "1") term = gpart;
            else if (c.find('+') != std::string::npos || c.find('*') != std::string::npos)
                term = "(" + c + ")*" + gpart;
            else
                term = c + "*" + gpart;
        }
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

namespace {

// Splits at top-level occurrences of sep (paren depth 0).
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced parentheses in literal");
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in literal");
    parts.push_back(cur);
    return parts;
}

} // namespace

uint32_t FieldSpec::parse_literal(std::string_view text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty field literal");
    const char gen = tower_depth_ == 1 ? 'g' : (tower_depth_ == 2 ? 'h' : '\0');
    uint32_t total = 0;
    for (const auto& term : split_top(s, '+')) {
        if (term.empty()) throw ParseError("empty term in field literal");
        uint32_t value = 1;
        for (const auto& factor : split_top(term, '*')) {
            if (factor.empty()) throw ParseError("empty factor in field literal");
            uint32_t fv;
            if (factor.front() == '(') {
                if (factor.back() != ')') throw ParseError("bad parentheses in literal");
                if (is_prime_field()) throw ParseError("unexpected parentheses in prime field literal");
                fv = embed(base_->parse_literal(factor.substr(1, factor.size() - 2)));
            } else if (factor.front() == gen && gen != '\0') {
                uint64_t e = 1;
                if (factor.size() > 1) {
                    if (factor[1] != '^') throw ParseError("bad generator factor: " + factor);
                    try {
                        e = std::stoull(factor.substr(2));
                    } catch (const std::logic_error&) {
                        throw ParseError("bad exponent in literal: " + factor);
                    }
                }
                fv = pow(static_cast<uint32_t>(base_->order()), e);
            } else if (std::isdigit(static_cast<unsigned char>(factor.front())) ||
                       factor.front() == '-') {
                try {
                    fv = from_int(std::stoll(factor));
                } catch (const std::logic_error&) {
                    throw ParseError("bad integer literal: " + factor);
                }
            } else if (!is_prime_field()) {
                // bare base-field literal inside a tower, e.g. "g" in F_{q^m}
                fv = embed(base_->parse_literal(factor));
            } else {
                throw ParseError("bad field literal factor: " + factor);
            }
            value = mul(value, fv);
        }
        total = add(total, value);
    }
    return total;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(FieldPtr spec, uint32_t index) : spec_(std::move(spec)), idx_(index) {
    if (!spec_) throw PreconditionError("null field spec");
    if (idx_ >= spec_->order()) throw PreconditionError("element index out of range");
}

std::vector<FieldElement> FieldElement::coefficients() const {
    auto v = spec_->to_base_vector(idx_);
    std::vector<FieldElement> out;
    out.reserve(v.size());
    const FieldPtr& b = spec_->is_prime_field() ? spec_ : spec_->base();
    for (uint32_t c : v) out.emplace_back(b, c);
    return out;
}

int64_t FieldElement::residue() const {
    if (!spec_->is_prime_field()) throw PreconditionError("residue() requires a prime field");
    return idx_;
}

std::string FieldElement::str() const { return spec_->literal(idx_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(spec_, o.spec_);
    return FieldElement(spec_, spec_->add(idx_, o.idx_));
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(spec_, o.spec_);
    return FieldElement(spec_, spec_->sub(idx_, o.idx_));
}
FieldElement FieldElement::operator-() const { return FieldElement(spec_, spec_->neg(idx_)); }
FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(spec_, o.spec_);
    return FieldElement(spec_, spec_->mul(idx_, o.idx_));
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_field(spec_, o.spec_);
    return FieldElement(spec_, spec_->div(idx_, o.idx_));
}
FieldElement FieldElement::inverse() const { return FieldElement(spec_, spec_->inv(idx_)); }
FieldElement FieldElement::pow(uint64_t e) const { return FieldElement(spec_, spec_->pow(idx_, e)); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (!spec_ || !o.spec_) return spec_ == o.spec_ && idx_ == o.idx_;
    return same_field(spec_, o.spec_) && idx_ == o.idx_;
}

} // namespace hk
