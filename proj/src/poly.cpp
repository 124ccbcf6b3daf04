#include "hkbound/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace hk {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(int i, int exp) {
    if (i < 0 || i >= kMaxVars) throw PreconditionError("variable index out of range");
    Monomial m;
    m.e[static_cast<size_t>(i)] = static_cast<uint8_t>(exp);
    m.deg = static_cast<uint8_t>(exp);
    return m;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i)
        m.e[static_cast<size_t>(i)] = static_cast<uint8_t>(e[static_cast<size_t>(i)] + o.e[static_cast<size_t>(i)]);
    m.deg = static_cast<uint8_t>(deg + o.deg);
    return m;
}

bool Monomial::divides(const Monomial& o) const {
    if (deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
        if (e[static_cast<size_t>(i)] > o.e[static_cast<size_t>(i)]) return false;
    return true;
}

Monomial Monomial::divided_by(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i)
        m.e[static_cast<size_t>(i)] = static_cast<uint8_t>(e[static_cast<size_t>(i)] - o.e[static_cast<size_t>(i)]);
    m.deg = static_cast<uint8_t>(deg - o.deg);
    return m;
}

Monomial Monomial::lcm(const Monomial& o) const {
    Monomial m;
    int d = 0;
    for (int i = 0; i < kMaxVars; ++i) {
        m.e[static_cast<size_t>(i)] = std::max(e[static_cast<size_t>(i)], o.e[static_cast<size_t>(i)]);
        d += m.e[static_cast<size_t>(i)];
    }
    m.deg = static_cast<uint8_t>(d);
    return m;
}

bool Monomial::coprime(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[static_cast<size_t>(i)] && o.e[static_cast<size_t>(i)]) return false;
    return true;
}

bool grevlex_less(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg < b.deg;
    // equal degree: a < b iff at the last index where they differ, a has the
    // LARGER exponent
    for (int i = kMaxVars - 1; i >= 0; --i) {
        if (a.e[static_cast<size_t>(i)] != b.e[static_cast<size_t>(i)])
            return a.e[static_cast<size_t>(i)] > b.e[static_cast<size_t>(i)];
    }
    return false;
}

namespace {
struct GrevlexGreater {
    bool operator()(const Term& x, const Term& y) const { return grevlex_less(y.mono, x.mono); }
};
} // namespace

// ---------------------------------------------------------------------------
// MultiPoly construction

MultiPoly MultiPoly::zero(FieldPtr field, int nvars) {
    return from_terms(std::move(field), nvars, {});
}

MultiPoly MultiPoly::constant(FieldPtr field, int nvars, uint32_t c) {
    std::vector<Term> t;
    if (c) t.push_back({Monomial::one(), c});
    return from_terms(std::move(field), nvars, std::move(t));
}

MultiPoly MultiPoly::monomial(FieldPtr field, int nvars, const Monomial& m, uint32_t c) {
    std::vector<Term> t;
    if (c) t.push_back({m, c});
    return from_terms(std::move(field), nvars, std::move(t));
}

MultiPoly MultiPoly::from_terms(FieldPtr field, int nvars, std::vector<Term> terms) {
    if (!field) throw PreconditionError("null field spec");
    if (nvars < 1 || nvars > kMaxVars) throw PreconditionError("variable count out of range");
    for (const auto& t : terms) {
        if (t.coeff >= field->order()) throw PreconditionError("coefficient out of range");
        for (int i = nvars; i < kMaxVars; ++i)
            if (t.mono.e[static_cast<size_t>(i)])
                throw PreconditionError("monomial uses variable beyond nvars");
    }
    std::sort(terms.begin(), terms.end(), GrevlexGreater{});
    std::vector<Term> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coeff = field->add(merged.back().coeff, t.coeff);
        else
            merged.push_back(t);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    MultiPoly p;
    p.field_ = std::move(field);
    p.nvars_ = nvars;
    p.terms_ = std::move(merged);
    return p;
}

int MultiPoly::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.deg));
    return d;
}

bool MultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    const uint8_t d = terms_.front().mono.deg;
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const Term& t) { return t.mono.deg == d; });
}

bool MultiPoly::uses_var(int i) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [i](const Term& t) { return t.mono.e[static_cast<size_t>(i)] != 0; });
}

uint32_t MultiPoly::coeff(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return 0;
}

const Term& MultiPoly::leading_term() const {
    if (terms_.empty()) throw PreconditionError("zero polynomial has no leading term");
    return terms_.front();
}

// ---------------------------------------------------------------------------
// arithmetic

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    if (nvars_ != o.nvars_) throw PreconditionError("variable count mismatch");
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].mono == o.terms_[j].mono) {
            uint32_t c = field_->add(terms_[i].coeff, o.terms_[j].coeff);
            if (c) out.push_back({terms_[i].mono, c});
            ++i, ++j;
        } else if (grevlex_less(o.terms_[j].mono, terms_[i].mono)) {
            out.push_back(terms_[i++]);
        } else {
            out.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    MultiPoly p;
    p.field_ = field_;
    p.nvars_ = nvars_;
    p.terms_ = std::move(out);
    return p;
}

MultiPoly MultiPoly::negated() const {
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.coeff = field_->neg(t.coeff);
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + o.negated(); }

MultiPoly MultiPoly::scaled(uint32_t c) const {
    if (c == 0) return zero(field_, nvars_);
    MultiPoly p = *this;
    for (auto& t : p.terms_) t.coeff = field_->mul(t.coeff, c);
    return p;
}

MultiPoly MultiPoly::monic() const {
    if (terms_.empty()) return *this;
    return scaled(field_->inv(terms_.front().coeff));
}

MultiPoly MultiPoly::times_term(const Monomial& m, uint32_t c) const {
    if (c == 0) return zero(field_, nvars_);
    MultiPoly p = *this;
    for (auto& t : p.terms_) {
        t.mono = t.mono.times(m); // a monomial order is translation invariant
        t.coeff = field_->mul(t.coeff, c);
    }
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    require_same_field(field_, o.field_);
    if (nvars_ != o.nvars_) throw PreconditionError("variable count mismatch");
    std::map<Monomial, uint32_t, decltype(&grevlex_less)> acc(&grevlex_less);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            const Monomial m = a.mono.times(b.mono);
            const uint32_t c = field_->mul(a.coeff, b.coeff);
            auto [it, inserted] = acc.emplace(m, c);
            if (!inserted) it->second = field_->add(it->second, c);
        }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        if (it->second) out.push_back({it->first, it->second});
    MultiPoly p;
    p.field_ = field_;
    p.nvars_ = nvars_;
    p.terms_ = std::move(out);
    return p;
}

uint32_t MultiPoly::evaluate(std::span<const uint32_t> coords) const {
    if (static_cast<int>(coords.size()) != nvars_)
        throw PreconditionError("coordinate count does not match variable count");
    uint32_t total = 0;
    for (const auto& t : terms_) {
        uint32_t v = t.coeff;
        for (int i = 0; i < nvars_ && v; ++i) {
            const uint8_t e = t.mono.e[static_cast<size_t>(i)];
            if (!e) continue;
            if (coords[static_cast<size_t>(i)] == 0) {
                v = 0;
                break;
            }
            v = field_->mul(v, field_->pow(coords[static_cast<size_t>(i)], e));
        }
        total = field_->add(total, v);
    }
    return total;
}

uint32_t MultiPoly::evaluate(const ProjPoint& p) const {
    require_same_field(field_, p.field);
    return evaluate(std::span<const uint32_t>(p.coords));
}

MultiPoly MultiPoly::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw PreconditionError("variable index out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
        const uint8_t e = t.mono.e[static_cast<size_t>(var)];
        if (!e) continue;
        const uint32_t k = field_->from_int(e);
        if (k == 0) continue; // exponent divisible by the characteristic
        Term nt;
        nt.mono = t.mono;
        nt.mono.e[static_cast<size_t>(var)] = static_cast<uint8_t>(e - 1);
        nt.mono.deg = static_cast<uint8_t>(t.mono.deg - 1);
        nt.coeff = field_->mul(t.coeff, k);
        out.push_back(nt);
    }
    return from_terms(field_, nvars_, std::move(out));
}

MultiPoly MultiPoly::lifted_to(const FieldPtr& ext) const {
    if (same_field(field_, ext)) return *this;
    if (!ext->base() || !same_field(ext->base(), field_))
        throw PreconditionError("lift target must be a tower extension of the coefficient field");
    MultiPoly p = *this;
    p.field_ = ext; // constants keep their index under the tower embedding
    return p;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    if (!same_field(field_, o.field_)) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Projectivity

Projectivity Projectivity::from_matrix(FieldPtr field, int n, std::vector<uint32_t> mat) {
    const size_t dim = static_cast<size_t>(n) + 1;
    if (mat.size() != dim * dim) throw PreconditionError("projectivity matrix size mismatch");
    // invert by Gauss-Jordan on [M | I]
    std::vector<std::vector<uint32_t>> work(dim, std::vector<uint32_t>(2 * dim, 0));
    for (size_t r = 0; r < dim; ++r) {
        for (size_t c = 0; c < dim; ++c) work[r][c] = mat[r * dim + c];
        work[r][dim + r] = 1;
    }
    for (size_t col = 0; col < dim; ++col) {
        size_t sel = col;
        while (sel < dim && work[sel][col] == 0) ++sel;
        if (sel == dim) throw PreconditionError("projectivity matrix is singular");
        std::swap(work[col], work[sel]);
        const uint32_t s = field->inv(work[col][col]);
        for (auto& v : work[col]) v = field->mul(v, s);
        for (size_t r = 0; r < dim; ++r) {
            if (r == col || work[r][col] == 0) continue;
            const uint32_t c = work[r][col];
            for (size_t j = 0; j < 2 * dim; ++j)
                work[r][j] = field->sub(work[r][j], field->mul(c, work[col][j]));
        }
    }
    Projectivity t;
    t.n = n;
    t.inv.resize(dim * dim);
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c) t.inv[r * dim + c] = work[r][dim + c];
    t.field = std::move(field);
    t.mat = std::move(mat);
    return t;
}

Projectivity Projectivity::identity(FieldPtr field, int n) {
    const size_t dim = static_cast<size_t>(n) + 1;
    std::vector<uint32_t> mat(dim * dim, 0);
    for (size_t i = 0; i < dim; ++i) mat[i * dim + i] = 1;
    return from_matrix(std::move(field), n, std::move(mat));
}

Projectivity Projectivity::inverse() const {
    Projectivity t;
    t.field = field;
    t.n = n;
    t.mat = inv;
    t.inv = mat;
    return t;
}

// ---------------------------------------------------------------------------
// composition with linear maps

namespace {

// F(x) with x_j replaced by images[j]; images live in target_nvars variables.
MultiPoly compose_linear(const MultiPoly& F, const std::vector<MultiPoly>& images,
                         int target_nvars) {
    const FieldPtr& field = F.field();
    MultiPoly acc = MultiPoly::zero(field, target_nvars);
    // power cache per variable
    std::vector<std::vector<MultiPoly>> pows(static_cast<size_t>(F.nvars()));
    for (int j = 0; j < F.nvars(); ++j)
        pows[static_cast<size_t>(j)].push_back(MultiPoly::constant(field, target_nvars, 1));
    auto power = [&](int j, int e) -> const MultiPoly& {
        auto& cache = pows[static_cast<size_t>(j)];
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * images[static_cast<size_t>(j)]);
        return cache[static_cast<size_t>(e)];
    };
    for (const auto& t : F.terms()) {
        MultiPoly prod = MultiPoly::constant(field, target_nvars, t.coeff);
        for (int j = 0; j < F.nvars(); ++j) {
            const uint8_t e = t.mono.e[static_cast<size_t>(j)];
            if (e) prod = prod * power(j, e);
        }
        acc = acc + prod;
    }
    return acc;
}

} // namespace

MultiPoly apply_projectivity(const MultiPoly& F, const Projectivity& T) {
    require_same_field(F.field(), T.field);
    if (F.nvars() != T.n + 1) throw PreconditionError("projectivity dimension mismatch");
    std::vector<MultiPoly> images;
    images.reserve(static_cast<size_t>(F.nvars()));
    for (int j = 0; j < F.nvars(); ++j) {
        std::vector<Term> terms;
        for (int k = 0; k < F.nvars(); ++k) {
            const uint32_t c = T.at(j, k);
            if (c) terms.push_back({Monomial::var(k), c});
        }
        images.push_back(MultiPoly::from_terms(F.field(), F.nvars(), std::move(terms)));
    }
    return compose_linear(F, images, F.nvars());
}

MultiPoly restrict_to_subspace(const MultiPoly& F, const LinearSubspace& S) {
    require_same_field(F.field(), S.field);
    if (F.nvars() != S.ambient + 1) throw PreconditionError("subspace ambient mismatch");
    const int tv = S.dim + 1;
    std::vector<MultiPoly> images;
    images.reserve(static_cast<size_t>(F.nvars()));
    for (int j = 0; j < F.nvars(); ++j) {
        std::vector<Term> terms;
        for (int i = 0; i <= S.dim; ++i) {
            const uint32_t c = S.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (c) terms.push_back({Monomial::var(i), c});
        }
        images.push_back(MultiPoly::from_terms(F.field(), tv, std::move(terms)));
    }
    return compose_linear(F, images, tv);
}

MultiPoly substitute_zero(const MultiPoly& F, int var) {
    if (var < 0 || var >= F.nvars()) throw PreconditionError("variable index out of range");
    std::vector<Term> out;
    for (const auto& t : F.terms()) {
        if (t.mono.e[static_cast<size_t>(var)]) continue;
        Term nt;
        nt.coeff = t.coeff;
        nt.mono.deg = t.mono.deg;
        int w = 0;
        for (int i = 0; i < F.nvars(); ++i) {
            if (i == var) continue;
            nt.mono.e[static_cast<size_t>(w++)] = t.mono.e[static_cast<size_t>(i)];
        }
        out.push_back(nt);
    }
    return MultiPoly::from_terms(F.field(), F.nvars() - 1, std::move(out));
}

// ---------------------------------------------------------------------------
// x0 decomposition

X0Decomposition x0_decomposition(const MultiPoly& F) {
    if (F.is_zero()) throw PreconditionError("cannot decompose the zero polynomial");
    if (!F.is_homogeneous()) throw PreconditionError("x0 decomposition needs a homogeneous input");
    const int d = F.degree();
    const int v = F.nvars();
    X0Decomposition dec;
    dec.degree = d;
    std::vector<std::vector<Term>> buckets(static_cast<size_t>(d) + 1);
    for (const auto& t : F.terms()) {
        const int j = d - t.mono.e[0];
        if (j == 0)
            throw PreconditionError("nonzero x0^d coefficient: base point does not lie on the hypersurface");
        Term nt;
        nt.coeff = t.coeff;
        nt.mono.deg = static_cast<uint8_t>(j);
        for (int i = 1; i < v; ++i)
            nt.mono.e[static_cast<size_t>(i - 1)] = t.mono.e[static_cast<size_t>(i)];
        buckets[static_cast<size_t>(j)].push_back(nt);
    }
    for (int j = 0; j <= d; ++j) {
        dec.comps.push_back(MultiPoly::from_terms(F.field(), v - 1, std::move(buckets[static_cast<size_t>(j)])));
        if (dec.min_nonzero < 0 && !dec.comps.back().is_zero()) dec.min_nonzero = j;
    }
    return dec;
}

MultiPoly x0_recompose(const X0Decomposition& dec, const FieldPtr& field, int nvars) {
    std::vector<Term> out;
    for (int j = 0; j <= dec.degree; ++j) {
        const auto& comp = dec.comps[static_cast<size_t>(j)];
        for (const auto& t : comp.terms()) {
            Term nt;
            nt.coeff = t.coeff;
            nt.mono.e[0] = static_cast<uint8_t>(dec.degree - j);
            for (int i = 0; i < comp.nvars(); ++i)
                nt.mono.e[static_cast<size_t>(i + 1)] = t.mono.e[static_cast<size_t>(i)];
            nt.mono.deg = static_cast<uint8_t>(dec.degree);
            out.push_back(nt);
        }
    }
    return MultiPoly::from_terms(field, nvars, std::move(out));
}

// ---------------------------------------------------------------------------
// division / splitting

std::pair<MultiPoly, MultiPoly> divide_single(const MultiPoly& F, const MultiPoly& D) {
    require_same_field(F.field(), D.field());
    if (D.is_zero()) throw PreconditionError("division by zero polynomial");
    const Term& lt = D.leading_term();
    const uint32_t lt_inv = F.field()->inv(lt.coeff);
    MultiPoly q = MultiPoly::zero(F.field(), F.nvars());
    MultiPoly r = MultiPoly::zero(F.field(), F.nvars());
    MultiPoly work = F;
    while (!work.is_zero()) {
        const Term& wt = work.leading_term();
        if (lt.mono.divides(wt.mono)) {
            const Monomial m = wt.mono.divided_by(lt.mono);
            const uint32_t c = F.field()->mul(wt.coeff, lt_inv);
            q = q + MultiPoly::monomial(F.field(), F.nvars(), m, c);
            work = work - D.times_term(m, c);
        } else {
            MultiPoly piece = MultiPoly::monomial(F.field(), F.nvars(), wt.mono, wt.coeff);
            r = r + piece;
            work = work - piece;
        }
    }
    return {q, r};
}

LinearSplit linear_factor_split(const MultiPoly& F) {
    if (F.nvars() != 3) throw PreconditionError("linear_factor_split expects a ternary form");
    if (F.is_zero()) throw PreconditionError("cannot split the zero polynomial");
    LinearSplit out;
    MultiPoly work = F;
    // Normalized linear forms correspond to points of P^2 over the field.
    for (const auto& p : enumerate_points(2, F.field())) {
        std::vector<Term> terms;
        for (int i = 0; i < 3; ++i)
            if (p.coords[static_cast<size_t>(i)])
                terms.push_back({Monomial::var(i), p.coords[static_cast<size_t>(i)]});
        const MultiPoly form = MultiPoly::from_terms(F.field(), 3, std::move(terms));
        while (work.degree() >= 1) {
            auto [q, r] = divide_single(work, form);
            if (!r.is_zero()) break;
            out.factors.push_back(form);
            work = q;
        }
        if (work.degree() < 1) break;
    }
    out.remainder = work;
    return out;
}

// ---------------------------------------------------------------------------
// text grammar

namespace {

std::vector<std::string> split_top_level(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced parentheses");
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses");
    parts.push_back(cur);
    return parts;
}

} // namespace

MultiPoly parse_poly(const FieldPtr& field, std::string_view text, int nvars) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty polynomial text");

    std::vector<Term> terms;
    int max_var = -1;
    for (const auto& term_text : split_top_level(s, '+')) {
        if (term_text.empty()) throw ParseError("empty term");
        uint32_t coeff = 1;
        Monomial mono;
        bool any_factor = false;
        for (const auto& factor : split_top_level(term_text, '*')) {
            if (factor.empty()) throw ParseError("empty factor in term");
            any_factor = true;
            if (factor[0] == 'x') {
                size_t caret = factor.find('^');
                std::string idx_text = factor.substr(1, caret == std::string::npos
                                                            ? std::string::npos
                                                            : caret - 1);
                int vi;
                int exp = 1;
                try {
                    vi = std::stoi(idx_text);
                    if (caret != std::string::npos) exp = std::stoi(factor.substr(caret + 1));
                } catch (const std::logic_error&) {
                    throw ParseError("bad variable factor: " + factor);
                }
                if (vi < 0 || vi >= kMaxVars) throw ParseError("variable index out of range: " + factor);
                if (exp < 0) throw ParseError("negative exponent: " + factor);
                if (mono.deg + exp > 255) throw ParseError("degree too large");
                mono.e[static_cast<size_t>(vi)] = static_cast<uint8_t>(mono.e[static_cast<size_t>(vi)] + exp);
                mono.deg = static_cast<uint8_t>(mono.deg + exp);
                max_var = std::max(max_var, vi);
            } else {
                std::string lit = factor;
                if (lit.front() == '(') {
                    if (lit.back() != ')') throw ParseError("bad parentheses: " + factor);
                    lit = lit.substr(1, lit.size() - 2);
                }
                coeff = field->mul(coeff, field->parse_literal(lit));
            }
        }
        if (!any_factor) throw ParseError("empty term");
        if (coeff) terms.push_back({mono, coeff});
    }
    int v = nvars;
    if (v < 0) v = std::max(max_var + 1, 1);
    if (max_var >= v) throw ParseError("polynomial uses more variables than declared");
    return MultiPoly::from_terms(field, v, std::move(terms));
}

MultiPoly parse_homogeneous_poly(const FieldPtr& field, std::string_view text, int nvars) {
    MultiPoly p = parse_poly(field, text, nvars);
    if (!p.is_homogeneous())
        throw ParseError("polynomial is not homogeneous");
    return p;
}

std::string format_poly(const MultiPoly& F) {
    if (F.is_zero()) return "0";
    std::string out;
    for (const auto& t : F.terms()) {
        std::string term;
        const std::string c = F.field()->literal(t.coeff);
        bool printed_coeff = false;
        if (t.mono.deg == 0 || c != "1") {
            term = (c.find('+') != std::string::npos) ? "(" + c + ")" : c;
            printed_coeff = true;
        }
        for (int i = 0; i < F.nvars(); ++i) {
            const uint8_t e = t.mono.e[static_cast<size_t>(i)];
            if (!e) continue;
            if (printed_coeff || !term.empty()) term += "*";
            term += "x" + std::to_string(i);
            if (e > 1) term += "^" + std::to_string(e);
            printed_coeff = false;
        }
        if (!out.empty()) out += " + ";
        out += term;
    }
    return out;
}

} // namespace hk
