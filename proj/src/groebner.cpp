#include "hkbound/groebner.hpp"

#include <algorithm>
#include <set>

namespace hk {

Ideal Ideal::make(std::vector<MultiPoly> gens) {
    if (gens.empty()) throw PreconditionError("ideal needs at least one generator");
    Ideal I;
    I.field = gens.front().field();
    I.nvars = gens.front().nvars();
    for (const auto& g : gens) {
        require_same_field(g.field(), I.field);
        if (g.nvars() != I.nvars) throw PreconditionError("generator variable count mismatch");
        if (g.is_zero()) throw PreconditionError("ideal generators must be nonzero");
        if (!g.is_homogeneous()) throw PreconditionError("ideal generators must be homogeneous");
    }
    I.gens = std::move(gens);
    return I;
}

MultiPoly normal_form(const MultiPoly& F, const std::vector<MultiPoly>& divisors) {
    MultiPoly work = F;
    MultiPoly result = MultiPoly::zero(F.field(), F.nvars());
    while (!work.is_zero()) {
        const Term& wt = work.leading_term();
        bool reduced = false;
        for (const auto& g : divisors) {
            const Term& gt = g.leading_term();
            if (!gt.mono.divides(wt.mono)) continue;
            const Monomial m = wt.mono.divided_by(gt.mono);
            const uint32_t c = F.field()->div(wt.coeff, gt.coeff);
            work = work - g.times_term(m, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            MultiPoly piece = MultiPoly::monomial(F.field(), F.nvars(), wt.mono, wt.coeff);
            result = result + piece;
            work = work - piece;
        }
    }
    return result;
}

MultiPoly normal_form(const MultiPoly& F, const GroebnerBasis& G) {
    require_same_field(F.field(), G.ideal().field);
    if (F.nvars() != G.ideal().nvars) throw PreconditionError("variable count mismatch");
    return normal_form(F, G.polys());
}

namespace {

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
    const Term& ft = f.leading_term();
    const Term& gt = g.leading_term();
    const Monomial l = ft.mono.lcm(gt.mono);
    return f.times_term(l.divided_by(ft.mono), f.field()->inv(ft.coeff)) -
           g.times_term(l.divided_by(gt.mono), f.field()->inv(gt.coeff));
}

struct Pair {
    int i, j;
    Monomial lcm;
};

} // namespace

GroebnerBasis buchberger(const Ideal& ideal, int degree_cap) {
    std::vector<MultiPoly> basis;
    for (const auto& g : ideal.gens) {
        if (g.degree() > degree_cap) throw DegreeCapError(degree_cap, g.degree());
        basis.push_back(g.monic());
    }

    auto pair_key = [](const Pair& p) {
        return std::tuple<int, int, int>(p.lcm.deg, p.i, p.j);
    };
    auto pair_less = [&](const Pair& a, const Pair& b) { return pair_key(a) < pair_key(b); };
    std::vector<Pair> pending;
    auto push_pairs_for = [&](int m) {
        for (int i = 0; i < m; ++i)
            pending.push_back({i, m, basis[static_cast<size_t>(i)].leading_term().mono.lcm(
                                         basis[static_cast<size_t>(m)].leading_term().mono)});
    };
    for (int m = 1; m < static_cast<int>(basis.size()); ++m) push_pairs_for(m);

    std::set<std::pair<int, int>> in_queue;
    for (const auto& p : pending) in_queue.insert({p.i, p.j});

    while (!pending.empty()) {
        auto it = std::min_element(pending.begin(), pending.end(), pair_less);
        Pair p = *it;
        pending.erase(it);
        in_queue.erase({p.i, p.j});

        const MultiPoly& f = basis[static_cast<size_t>(p.i)];
        const MultiPoly& g = basis[static_cast<size_t>(p.j)];
        // coprime criterion
        if (f.leading_term().mono.coprime(g.leading_term().mono)) continue;
        // chain criterion: some other leading term divides the lcm and both
        // associated pairs were already handled
        bool skip = false;
        for (int k = 0; k < static_cast<int>(basis.size()); ++k) {
            if (k == p.i || k == p.j) continue;
            if (!basis[static_cast<size_t>(k)].leading_term().mono.divides(p.lcm)) continue;
            auto key_ik = std::minmax(p.i, k);
            auto key_jk = std::minmax(p.j, k);
            if (!in_queue.count({key_ik.first, key_ik.second}) &&
                !in_queue.count({key_jk.first, key_jk.second})) {
                skip = true;
                break;
            }
        }
        if (skip) continue;

        if (p.lcm.deg > degree_cap) throw DegreeCapError(degree_cap, p.lcm.deg);
        MultiPoly r = normal_form(s_polynomial(f, g), basis);
        if (r.is_zero()) continue;
        if (r.degree() > degree_cap) throw DegreeCapError(degree_cap, r.degree());
        basis.push_back(r.monic());
        const int m = static_cast<int>(basis.size()) - 1;
        push_pairs_for(m);
        for (int i = 0; i < m; ++i) in_queue.insert({i, m});
    }

    // Interreduce to the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            std::vector<MultiPoly> others;
            others.reserve(basis.size() - 1);
            for (size_t j = 0; j < basis.size(); ++j)
                if (j != i) others.push_back(basis[j]);
            MultiPoly r = normal_form(basis[i], others);
            if (r.is_zero()) {
                basis.erase(basis.begin() + static_cast<long>(i));
                changed = true;
                break;
            }
            MultiPoly rm = r.monic();
            if (rm != basis[i]) {
                basis[i] = rm;
                changed = true;
                break;
            }
        }
    }
    std::sort(basis.begin(), basis.end(), [](const MultiPoly& a, const MultiPoly& b) {
        return grevlex_less(a.leading_term().mono, b.leading_term().mono);
    });

    GroebnerBasis out;
    out.basis_ = std::move(basis);
    out.origin_ = ideal;
    return out;
}

bool is_projectively_empty(const Ideal& ideal, int degree_cap) {
    GroebnerBasis gb = buchberger(ideal, degree_cap);
    for (int v = 0; v < ideal.nvars; ++v) {
        bool found = false;
        for (const auto& g : gb.polys()) {
            const Monomial& lt = g.leading_term().mono;
            if (lt.e[static_cast<size_t>(v)] == 0) continue;
            bool pure = true;
            for (int w = 0; w < ideal.nvars; ++w)
                if (w != v && lt.e[static_cast<size_t>(w)] != 0) {
                    pure = false;
                    break;
                }
            if (pure) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

} // namespace hk
