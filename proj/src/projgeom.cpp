#include "hkbound/projgeom.hpp"

#include <algorithm>
#include <map>

namespace hk {

BigInt proj_count_big(int N, uint64_t q) {
    if (N < 0) throw PreconditionError("projective dimension must be >= 0");
    BigInt total = 0, term = 1;
    for (int i = 0; i <= N; ++i) {
        total += term;
        term *= q;
    }
    return total;
}

uint64_t proj_count(int N, uint64_t q) {
    BigInt v = proj_count_big(N, q);
    if (v > BigInt(UINT64_MAX)) throw PreconditionError("projective point count exceeds 64 bits");
    return static_cast<uint64_t>(v);
}

// ---------------------------------------------------------------------------
// ProjPoint

ProjPoint ProjPoint::make(FieldPtr field, std::vector<uint32_t> coords) {
    if (!field) throw PreconditionError("null field spec");
    if (coords.empty()) throw PreconditionError("empty coordinate vector");
    size_t lead = coords.size();
    for (size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= field->order()) throw PreconditionError("coordinate out of range");
        if (coords[i] != 0 && lead == coords.size()) lead = i;
    }
    if (lead == coords.size()) throw PreconditionError("projective point cannot be all zeros");
    if (coords[lead] != 1) {
        const uint32_t s = field->inv(coords[lead]);
        for (auto& c : coords) c = field->mul(c, s);
    }
    ProjPoint p;
    p.ambient = static_cast<int>(coords.size()) - 1;
    p.field = std::move(field);
    p.coords = std::move(coords);
    return p;
}

ProjPoint ProjPoint::parse(const FieldPtr& field, std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 2 || s.front() != '(' || s.back() != ')')
        throw ParseError("point literal must look like (c0:c1:...:cN)");
    s = s.substr(1, s.size() - 2);
    std::vector<uint32_t> coords;
    size_t start = 0;
    while (true) {
        size_t colon = s.find(':', start);
        std::string part = s.substr(start, colon == std::string::npos ? colon : colon - start);
        coords.push_back(field->parse_literal(part));
        if (colon == std::string::npos) break;
        start = colon + 1;
    }
    return make(field, std::move(coords));
}

std::string ProjPoint::str() const {
    std::string out = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i) out += ":";
        out += field->literal(coords[i]);
    }
    return out + ")";
}

// ---------------------------------------------------------------------------
// row echelon machinery

std::vector<std::vector<uint32_t>> rref(const FieldSpec& f,
                                        std::vector<std::vector<uint32_t>> rows) {
    if (rows.empty()) return rows;
    const size_t ncols = rows[0].size();
    size_t pivot_row = 0;
    for (size_t col = 0; col < ncols && pivot_row < rows.size(); ++col) {
        size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const uint32_t s = f.inv(rows[pivot_row][col]);
        for (auto& v : rows[pivot_row]) v = f.mul(v, s);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == 0) continue;
            const uint32_t c = rows[r][col];
            for (size_t j = 0; j < ncols; ++j)
                rows[r][j] = f.sub(rows[r][j], f.mul(c, rows[pivot_row][j]));
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return rows;
}

LinearSubspace LinearSubspace::from_rows(FieldPtr field, int ambient,
                                         std::vector<std::vector<uint32_t>> rows) {
    if (!field) throw PreconditionError("null field spec");
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != ambient + 1)
            throw PreconditionError("row length does not match ambient dimension");
    auto reduced = rref(*field, std::move(rows));
    if (reduced.empty()) throw PreconditionError("subspace must contain at least a point");
    LinearSubspace s;
    s.ambient = ambient;
    s.dim = static_cast<int>(reduced.size()) - 1;
    s.field = std::move(field);
    s.rows = std::move(reduced);
    return s;
}

LinearSubspace LinearSubspace::from_points(std::span<const ProjPoint> pts) {
    if (pts.empty()) throw PreconditionError("need at least one point");
    std::vector<std::vector<uint32_t>> rows;
    rows.reserve(pts.size());
    for (const auto& p : pts) {
        require_same_field(p.field, pts.front().field);
        rows.push_back(p.coords);
    }
    return from_rows(pts.front().field, pts.front().ambient, std::move(rows));
}

bool LinearSubspace::contains(const ProjPoint& p) const {
    require_same_field(field, p.field);
    if (p.ambient != ambient) throw PreconditionError("ambient dimension mismatch");
    // Reduce p against the RREF rows; membership iff the residue vanishes.
    std::vector<uint32_t> v = p.coords;
    for (const auto& row : rows) {
        size_t lead = 0;
        while (lead < row.size() && row[lead] == 0) ++lead;
        if (lead == row.size()) continue;
        const uint32_t c = v[lead];
        if (c == 0) continue;
        for (size_t j = 0; j < v.size(); ++j) v[j] = field->sub(v[j], field->mul(c, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; });
}

bool LinearSubspace::contains_subspace(const LinearSubspace& s) const {
    for (const auto& row : s.rows) {
        ProjPoint p = ProjPoint::make(field, row);
        if (!contains(p)) return false;
    }
    return true;
}

std::vector<ProjPoint> LinearSubspace::rational_points() const {
    // Images of the points of P^dim under the injective parametrization by
    // basis rows, in the P^dim enumeration order.
    std::vector<ProjPoint> out;
    for (const auto& t : enumerate_points(dim, field)) {
        std::vector<uint32_t> v(static_cast<size_t>(ambient) + 1, 0);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (t.coords[i] == 0) continue;
            for (size_t j = 0; j < v.size(); ++j)
                v[j] = field->add(v[j], field->mul(t.coords[i], rows[i][j]));
        }
        out.push_back(ProjPoint::make(field, std::move(v)));
    }
    return out;
}

std::string LinearSubspace::key() const {
    std::string k = std::to_string(dim) + "|";
    for (const auto& row : rows)
        for (uint32_t v : row) k += std::to_string(v) + ",";
    return k;
}

// ---------------------------------------------------------------------------
// enumerations

std::vector<ProjPoint> enumerate_points(int N, const FieldPtr& field) {
    if (N < 0) throw PreconditionError("projective dimension must be >= 0");
    const uint64_t q = field->order();
    std::vector<ProjPoint> out;
    out.reserve(proj_count(N, q));
    std::vector<uint32_t> coords(static_cast<size_t>(N) + 1, 0);
    for (int lead = 0; lead <= N; ++lead) {
        const int free = N - lead;
        uint64_t count = 1;
        for (int i = 0; i < free; ++i) count *= q;
        for (uint64_t k = 0; k < count; ++k) {
            std::fill(coords.begin(), coords.end(), 0);
            coords[static_cast<size_t>(lead)] = 1;
            // lexicographic: leftmost free coordinate is the most significant
            uint64_t v = k;
            for (int i = free - 1; i >= 0; --i) {
                coords[static_cast<size_t>(lead + 1 + i)] = static_cast<uint32_t>(v % q);
                v /= q;
            }
            ProjPoint p;
            p.field = field;
            p.ambient = N;
            p.coords = coords;
            out.push_back(std::move(p));
        }
    }
    return out;
}

LinearSubspace line_through(const ProjPoint& p, const ProjPoint& q) {
    require_same_field(p.field, q.field);
    if (p.ambient != q.ambient) throw PreconditionError("ambient dimension mismatch");
    if (p == q) throw PreconditionError("line through coincident points is undefined");
    const ProjPoint pts[2] = {p, q};
    return LinearSubspace::from_points(pts);
}

std::vector<LinearSubspace> subspaces_of_dim(int N, int k, const FieldPtr& field) {
    if (k < 0 || k > N) throw PreconditionError("need 0 <= k <= N");
    const uint64_t q = field->order();
    const int nrows = k + 1, ncols = N + 1;
    std::vector<LinearSubspace> out;

    // Iterate pivot column choices in lexicographic order, then fill the
    // free entries (right of each pivot, outside pivot columns) in counting
    // order. Every rank-(k+1) RREF matrix arises exactly once.
    std::vector<int> pivots(static_cast<size_t>(nrows));
    for (int i = 0; i < nrows; ++i) pivots[static_cast<size_t>(i)] = i;
    while (true) {
        std::vector<std::pair<int, int>> free_pos; // (row, col)
        for (int i = 0; i < nrows; ++i)
            for (int j = pivots[static_cast<size_t>(i)] + 1; j < ncols; ++j)
                if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
                    free_pos.emplace_back(i, j);
        uint64_t count = 1;
        for (size_t i = 0; i < free_pos.size(); ++i) count *= q;
        for (uint64_t idx = 0; idx < count; ++idx) {
            std::vector<std::vector<uint32_t>> rows(
                static_cast<size_t>(nrows), std::vector<uint32_t>(static_cast<size_t>(ncols), 0));
            for (int i = 0; i < nrows; ++i)
                rows[static_cast<size_t>(i)][static_cast<size_t>(pivots[static_cast<size_t>(i)])] = 1;
            uint64_t v = idx;
            for (const auto& [r, c] : free_pos) {
                rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = static_cast<uint32_t>(v % q);
                v /= q;
            }
            LinearSubspace s;
            s.field = field;
            s.ambient = N;
            s.dim = k;
            s.rows = std::move(rows);
            out.push_back(std::move(s));
        }
        // next pivot combination
        int t = nrows - 1;
        while (t >= 0 && pivots[static_cast<size_t>(t)] == ncols - nrows + t) --t;
        if (t < 0) break;
        ++pivots[static_cast<size_t>(t)];
        for (int i = t + 1; i < nrows; ++i)
            pivots[static_cast<size_t>(i)] = pivots[static_cast<size_t>(i - 1)] + 1;
    }
    return out;
}

std::vector<LinearSubspace> subspaces_containing(const LinearSubspace& s, int k) {
    if (k <= s.dim || k > s.ambient) throw PreconditionError("need s.dim < k <= ambient");
    // Extend by one point at a time; dedupe through the canonical RREF key.
    std::map<std::string, LinearSubspace> current;
    current.emplace(s.key(), s);
    const auto pts = enumerate_points(s.ambient, s.field);
    for (int level = s.dim + 1; level <= k; ++level) {
        std::map<std::string, LinearSubspace> next;
        for (const auto& [unused_key, sub] : current) {
            (void)unused_key;
            for (const auto& p : pts) {
                if (sub.contains(p)) continue;
                auto rows = sub.rows;
                rows.push_back(p.coords);
                auto ext = LinearSubspace::from_rows(s.field, s.ambient, std::move(rows));
                next.emplace(ext.key(), std::move(ext));
            }
        }
        current = std::move(next);
    }
    std::vector<LinearSubspace> out;
    out.reserve(current.size());
    for (auto& [unused_key, sub] : current) {
        (void)unused_key;
        out.push_back(std::move(sub));
    }
    return out;
}

std::vector<LinearSubspace> planes_containing(const LinearSubspace& line) {
    if (line.dim != 1) throw PreconditionError("planes_containing expects a line");
    if (line.ambient < 2) throw PreconditionError("ambient dimension must be >= 2");
    return subspaces_containing(line, 2);
}

} // namespace hk
