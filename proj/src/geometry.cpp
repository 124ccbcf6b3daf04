#include "hkbound/geometry.hpp"

#include <algorithm>
#include <set>

#include "hkbound/bitslice.hpp"
#include "hkbound/evalgrid.hpp"

namespace hk {

Hypersurface Hypersurface::make(MultiPoly F) {
    if (F.is_zero()) throw PreconditionError("hypersurface polynomial must be nonzero");
    if (!F.is_homogeneous()) throw PreconditionError("hypersurface polynomial must be homogeneous");
    if (F.degree() < 2) throw PreconditionError("hypersurface degree must be >= 2");
    if (F.nvars() < 2) throw PreconditionError("hypersurface needs at least two variables");
    Hypersurface X;
    X.field = F.field();
    X.ambient = F.nvars() - 1;
    X.dim = X.ambient - 1;
    X.degree = F.degree();
    X.F = std::move(F);
    return X;
}

// ---------------------------------------------------------------------------
// counting and singular loci

std::vector<ProjPoint> rational_points(const Hypersurface& X, int m) {
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    const FieldPtr ext = FieldSpec::extension(X.field, m);
    const MultiPoly F = X.F.lifted_to(ext);
    const auto grid = eval_grid(ext, X.ambient, X.degree);
    std::vector<ProjPoint> out;
    for (size_t i = 0; i < grid->npoints(); ++i)
        if (grid->eval(F, i) == 0) out.push_back(grid->point(i));
    return out;
}

int64_t point_count(const Hypersurface& X, int m) {
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    if (m == 1 && X.field->order() == 2) return bitsliced_point_count(X.F);
    const FieldPtr ext = FieldSpec::extension(X.field, m);
    const MultiPoly F = X.F.lifted_to(ext);
    const auto grid = eval_grid(ext, X.ambient, X.degree);
    int64_t count = 0;
    for (size_t i = 0; i < grid->npoints(); ++i)
        if (grid->eval(F, i) == 0) ++count;
    return count;
}

std::vector<ProjPoint> singular_points_over(const Hypersurface& X, int m) {
    if (m < 1) throw PreconditionError("extension degree must be >= 1");
    const FieldPtr ext = FieldSpec::extension(X.field, m);
    std::vector<MultiPoly> polys;
    polys.push_back(X.F.lifted_to(ext));
    for (int j = 0; j <= X.ambient; ++j) {
        MultiPoly d = X.F.derivative(j);
        if (!d.is_zero()) polys.push_back(d.lifted_to(ext));
    }
    const auto grid = eval_grid(ext, X.ambient, X.degree);
    std::vector<ProjPoint> out;
    for (size_t i = 0; i < grid->npoints(); ++i) {
        bool all_zero = true;
        for (const auto& p : polys)
            if (grid->eval(p, i) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) out.push_back(grid->point(i));
    }
    return out;
}

Ideal jacobian_ideal(const Hypersurface& X) {
    std::vector<MultiPoly> gens;
    gens.push_back(X.F);
    for (int j = 0; j <= X.ambient; ++j) {
        MultiPoly d = X.F.derivative(j);
        if (!d.is_zero()) gens.push_back(std::move(d));
    }
    return Ideal::make(std::move(gens));
}

bool is_nonsingular(const Hypersurface& X, int degree_cap) {
    return is_projectively_empty(jacobian_ideal(X), degree_cap);
}

// ---------------------------------------------------------------------------
// tangent sections

namespace {

std::vector<uint32_t> gradient_at(const Hypersurface& X, const ProjPoint& P) {
    std::vector<uint32_t> g(static_cast<size_t>(X.ambient) + 1);
    for (int j = 0; j <= X.ambient; ++j)
        g[static_cast<size_t>(j)] = X.F.derivative(j).evaluate(P);
    return g;
}

// Deterministic projectivity with column 0 = P; when a nonzero normal vector
// w is supplied, columns 0..N-1 span the hyperplane w.x = 0 and column N
// falls outside it, so the transformed tangent hyperplane becomes V(x_N).
Projectivity standardizing_projectivity(const FieldPtr& field, const ProjPoint& P,
                                        const std::vector<uint32_t>* w) {
    const int N = P.ambient;
    const size_t dim = static_cast<size_t>(N) + 1;
    std::vector<std::vector<uint32_t>> cols;
    cols.push_back(P.coords);

    std::vector<std::vector<uint32_t>> candidates;
    size_t t = dim;
    if (w) {
        for (size_t i = 0; i < dim; ++i)
            if ((*w)[i] != 0) {
                t = i;
                break;
            }
        // basis of the hyperplane w.x = 0: e_j - (w_j / w_t) e_t for j != t
        for (size_t j = 0; j < dim; ++j) {
            if (j == t) continue;
            std::vector<uint32_t> v(dim, 0);
            v[j] = 1;
            v[t] = field->neg(field->div((*w)[j], (*w)[t]));
            candidates.push_back(std::move(v));
        }
    } else {
        for (size_t j = 0; j < dim; ++j) {
            std::vector<uint32_t> v(dim, 0);
            v[j] = 1;
            candidates.push_back(std::move(v));
        }
    }

    // Greedy completion to a basis of the hyperplane (or the whole space);
    // independence via full row reduction, so insertion order cannot lie.
    auto rank_of = [&](const std::vector<std::vector<uint32_t>>& rows) {
        return rref(*field, rows).size();
    };
    const size_t want = w ? dim - 1 : dim;
    for (const auto& c : candidates) {
        if (cols.size() == want) break;
        auto trial = cols;
        trial.push_back(c);
        if (rank_of(trial) == trial.size()) cols.push_back(c);
    }
    if (cols.size() != want) throw Error("projectivity completion failed (unreachable)");
    if (w) {
        std::vector<uint32_t> last(dim, 0);
        last[t] = 1;
        cols.push_back(std::move(last));
    }

    std::vector<uint32_t> mat(dim * dim);
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c) mat[r * dim + c] = cols[c][r];
    return Projectivity::from_matrix(field, N, std::move(mat));
}

} // namespace

TangentSectionReport tangent_section(const Hypersurface& X, const ProjPoint& P) {
    require_same_field(X.field, P.field);
    if (P.ambient != X.ambient) throw PreconditionError("point ambient mismatch");
    if (X.F.evaluate(P) != 0) throw PreconditionError("point does not lie on the hypersurface");
    const auto w = gradient_at(X, P);
    if (std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; }))
        throw PreconditionError("tangent section undefined at a singular point");

    const int N = X.ambient;
    TangentSectionReport rep;
    rep.point = P;
    rep.to_standard = standardizing_projectivity(X.field, P, &w);

    // tangent hyperplane = span of the first N columns
    {
        std::vector<std::vector<uint32_t>> rows;
        const size_t dim = static_cast<size_t>(N) + 1;
        for (size_t c = 0; c + 1 < dim; ++c) {
            std::vector<uint32_t> row(dim);
            for (size_t r = 0; r < dim; ++r) row[r] = rep.to_standard.mat[r * dim + c];
            rows.push_back(std::move(row));
        }
        rep.tangent = LinearSubspace::from_rows(X.field, N, std::move(rows));
    }

    const MultiPoly G = apply_projectivity(X.F, rep.to_standard);
    rep.section = substitute_zero(G, N);
    if (rep.section.is_zero())
        throw PreconditionError("tangent hyperplane is contained in the hypersurface");

    X0Decomposition dec = x0_decomposition(rep.section);
    rep.components = dec.comps;
    rep.min_degree = dec.min_nonzero;
    if (rep.min_degree < 2)
        throw Error("tangent section has a linear term (inconsistent tangency)");
    rep.tangent_cone = rep.components[static_cast<size_t>(rep.min_degree)];
    rep.is_cone = (rep.min_degree == X.degree);
    if (rep.is_cone)
        rep.base = Hypersurface::make(rep.components[static_cast<size_t>(X.degree)]);
    return rep;
}

bool cone_base_nonsingular(const TangentSectionReport& report, int degree_cap) {
    if (!report.is_cone || !report.base)
        throw PreconditionError("cone_base_nonsingular needs a cone section");
    return is_nonsingular(*report.base, degree_cap);
}

// ---------------------------------------------------------------------------
// line loci

LineLocus line_locus(const Hypersurface& X, const ProjPoint& P) {
    require_same_field(X.field, P.field);
    if (X.F.evaluate(P) != 0) throw PreconditionError("point does not lie on the hypersurface");
    const auto w = gradient_at(X, P);
    const bool singular = std::all_of(w.begin(), w.end(), [](uint32_t x) { return x == 0; });

    LineLocus out;
    out.point = P;
    Projectivity T = singular ? standardizing_projectivity(X.field, P, nullptr)
                              : standardizing_projectivity(X.field, P, &w);
    std::vector<MultiPoly> comps;
    bool hyperplane_coords = false;
    if (!singular) {
        const MultiPoly G = apply_projectivity(X.F, T);
        const MultiPoly section = substitute_zero(G, X.ambient);
        if (!section.is_zero()) {
            comps = x0_decomposition(section).comps;
            out.locus_ambient = X.ambient - 2;
            hyperplane_coords = true;
        }
    }
    if (!hyperplane_coords) {
        // singular point, or tangent hyperplane contained in X: decompose F
        // itself; directions live in P^{N-1}
        comps = x0_decomposition(apply_projectivity(X.F, T)).comps;
        out.locus_ambient = X.ambient - 1;
    }
    for (const auto& c : comps)
        if (!c.is_zero()) out.generators.push_back(c);

    const auto grid = eval_grid(X.field, out.locus_ambient, X.degree);
    const size_t dim = static_cast<size_t>(X.ambient) + 1;
    for (size_t i = 0; i < grid->npoints(); ++i) {
        bool all_zero = true;
        for (const auto& g : out.generators)
            if (grid->eval(g, i) != 0) {
                all_zero = false;
                break;
            }
        if (!all_zero) continue;
        ProjPoint Q = grid->point(i);
        out.locus_points.push_back(Q);
        // direction in standard coordinates: (0, Q, [0]) -> ambient
        std::vector<uint32_t> std_coords(dim, 0);
        for (size_t j = 0; j < Q.coords.size(); ++j) std_coords[j + 1] = Q.coords[j];
        std::vector<uint32_t> amb(dim, 0);
        for (size_t r = 0; r < dim; ++r)
            for (size_t c = 0; c < dim; ++c)
                amb[r] = X.field->add(amb[r], X.field->mul(T.mat[r * dim + c], std_coords[c]));
        ProjPoint D = ProjPoint::make(X.field, std::move(amb));
        out.lines.push_back(line_through(P, D));
    }
    return out;
}

int thas_invariant(const Hypersurface& X) {
    const auto pts = rational_points(X);
    if (pts.empty()) return -1; // pointless hypersurface, invariant undefined

    // All lines in X, via the loci of lines through each rational point.
    std::map<std::string, LinearSubspace> current;
    for (const auto& P : pts)
        for (const auto& l : line_locus(X, P).lines)
            current.emplace(l.key(), l);
    if (current.empty()) return 0;

    // Grow one dimension at a time. A subspace of X only ever extends by
    // points of X, so the search stays exhaustive while scanning X's
    // rational points instead of the whole ambient space.
    int k = 1;
    while (k < X.ambient) {
        std::map<std::string, LinearSubspace> next;
        for (const auto& [unused_key, sub] : current) {
            (void)unused_key;
            for (const auto& p : pts) {
                if (sub.contains(p)) continue;
                auto rows = sub.rows;
                rows.push_back(p.coords);
                auto ext = LinearSubspace::from_rows(X.field, X.ambient, std::move(rows));
                if (next.count(ext.key())) continue;
                if (restrict_to_subspace(X.F, ext).is_zero()) next.emplace(ext.key(), std::move(ext));
            }
        }
        if (next.empty()) return k;
        current = std::move(next);
        ++k;
    }
    return k;
}

std::vector<LinearSubspace> lines_in(const Hypersurface& X) {
    std::map<std::string, LinearSubspace> found;
    for (const auto& P : rational_points(X))
        for (const auto& l : line_locus(X, P).lines) found.emplace(l.key(), l);
    std::vector<LinearSubspace> out;
    out.reserve(found.size());
    for (auto& [unused_key, l] : found) {
        (void)unused_key;
        out.push_back(std::move(l));
    }
    return out;
}

// ---------------------------------------------------------------------------
// conic classification

const char* conic_class_name(ConicClass c) {
    switch (c) {
        case ConicClass::smooth_conic: return "smooth_conic";
        case ConicClass::pointless_irreducible: return "pointless_irreducible";
        case ConicClass::double_line: return "double_line";
        case ConicClass::rational_line_pair: return "rational_line_pair";
        case ConicClass::conjugate_line_pair: return "conjugate_line_pair";
    }
    return "?";
}

ConicClass classify_conic(const MultiPoly& F2) {
    if (F2.is_zero() || F2.degree() != 2 || F2.nvars() != 3 || !F2.is_homogeneous())
        throw PreconditionError("classify_conic expects a nonzero ternary quadratic form");
    LinearSplit split = linear_factor_split(F2);
    if (split.factors.size() == 2)
        return split.factors[0] == split.factors[1] ? ConicClass::double_line
                                                    : ConicClass::rational_line_pair;
    if (!split.factors.empty())
        throw Error("quadratic with exactly one rational linear factor (unreachable)");

    // no rational factor: smooth conic or a conjugate pair over F_{q^2}
    std::vector<MultiPoly> gens;
    gens.push_back(F2);
    for (int j = 0; j < 3; ++j) {
        MultiPoly d = F2.derivative(j);
        if (!d.is_zero()) gens.push_back(std::move(d));
    }
    if (is_projectively_empty(Ideal::make(std::move(gens)))) return ConicClass::smooth_conic;

    const FieldPtr ext = FieldSpec::extension(F2.field(), 2);
    LinearSplit ext_split = linear_factor_split(F2.lifted_to(ext));
    if (ext_split.factors.size() != 2)
        throw Error("singular irreducible conic did not split over the quadratic extension");
    // The two conjugate lines meet in a single rational point, so this
    // orbit is the pointless case; that label wins whenever the count
    // allows it.
    int64_t rational = 0;
    const auto grid = eval_grid(F2.field(), 2, 2);
    for (size_t i = 0; i < grid->npoints(); ++i)
        if (grid->eval(F2, i) == 0) ++rational;
    return rational <= 1 ? ConicClass::pointless_irreducible : ConicClass::conjugate_line_pair;
}

// ---------------------------------------------------------------------------
// pencil statistics

PencilStats pencil_stats(const Hypersurface& X, const LinearSubspace& line) {
    require_same_field(X.field, line.field);
    if (X.ambient != 4) throw PreconditionError("pencil statistics require a threefold in P^4");
    if (line.dim != 1 || line.ambient != 4) throw PreconditionError("pencil axis must be a line in P^4");
    if (!restrict_to_subspace(X.F, line).is_zero())
        throw PreconditionError("line is not contained in the hypersurface");

    PencilStats stats;
    stats.line = line;
    stats.degree = X.degree;
    stats.q = X.field->order();

    const auto line_pts = line.rational_points();
    std::set<std::string> omega_planes;

    for (const auto& plane : planes_containing(line)) {
        const MultiPoly R = restrict_to_subspace(X.F, plane);
        if (R.is_zero()) {
            stats.delta_planes.push_back(plane);
            continue;
        }
        LinearSplit split = linear_factor_split(R);
        if (split.remainder.degree() != 0) continue; // not a full rational split
        if (static_cast<int>(split.factors.size()) != X.degree) continue;
        // all-distinct check
        bool distinct = true;
        for (size_t i = 0; i < split.factors.size() && distinct; ++i)
            for (size_t j = i + 1; j < split.factors.size(); ++j)
                if (split.factors[i] == split.factors[j]) {
                    distinct = false;
                    break;
                }
        if (!distinct) continue;
        stats.sigma_planes.push_back(plane);

        // concurrent iff the factor coefficient matrix has rank 2; the
        // common point is then the kernel direction
        std::vector<std::vector<uint32_t>> coeff_rows;
        for (const auto& f : split.factors) {
            std::vector<uint32_t> row(3, 0);
            for (const auto& t : f.terms())
                for (int v = 0; v < 3; ++v)
                    if (t.mono.e[static_cast<size_t>(v)]) row[static_cast<size_t>(v)] = t.coeff;
            coeff_rows.push_back(std::move(row));
        }
        auto reduced = rref(*X.field, coeff_rows);
        if (reduced.size() != 2) continue; // rank 3: no common point; rank 1 impossible (distinct)
        // kernel of the 2x3 RREF system
        std::vector<uint32_t> sol(3, 0);
        {
            std::array<bool, 3> pivot{false, false, false};
            std::array<size_t, 3> pivot_row{0, 0, 0};
            for (size_t r = 0; r < reduced.size(); ++r)
                for (size_t c = 0; c < 3; ++c)
                    if (reduced[r][c] != 0) {
                        pivot[c] = true;
                        pivot_row[c] = r;
                        break;
                    }
            size_t free_col = 3;
            for (size_t c = 0; c < 3; ++c)
                if (!pivot[c]) free_col = c;
            sol[free_col] = 1;
            for (size_t c = 0; c < 3; ++c)
                if (pivot[c]) sol[c] = X.field->neg(reduced[pivot_row[c]][free_col]);
        }
        // back to ambient coordinates through the plane parametrization
        std::vector<uint32_t> amb(static_cast<size_t>(X.ambient) + 1, 0);
        for (size_t i = 0; i < 3; ++i) {
            if (sol[i] == 0) continue;
            for (size_t j = 0; j < amb.size(); ++j)
                amb[j] = X.field->add(amb[j], X.field->mul(sol[i], plane.rows[i][j]));
        }
        ProjPoint Q = ProjPoint::make(X.field, std::move(amb));
        stats.omega_by_point[Q.str()].push_back(plane);
        omega_planes.insert(plane.key());
    }

    stats.delta = static_cast<int>(stats.delta_planes.size());
    stats.sigma_size = stats.sigma_planes.size();
    stats.omega_size = omega_planes.size();

    // per-point line counts and epsilon for the designated first point
    std::map<std::string, std::vector<LinearSubspace>> lines_through;
    for (const auto& x : line_pts) {
        auto locus = line_locus(X, x);
        stats.delta_x[x.str()] = static_cast<int>(locus.lines.size());
        lines_through[x.str()] = std::move(locus.lines);
    }
    stats.designated_point = line_pts.front();
    int eps = 0;
    for (const auto& l : lines_through[stats.designated_point.str()]) {
        if (l == line) continue;
        bool in_delta_plane = false;
        for (const auto& dp : stats.delta_planes)
            if (dp.contains_subspace(l)) {
                in_delta_plane = true;
                break;
            }
        if (!in_delta_plane) ++eps;
    }
    stats.epsilon_p = eps;
    return stats;
}

} // namespace hk
