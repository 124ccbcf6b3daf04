#include "hkbound/search.hpp"

#include <algorithm>
#include <bit>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <sstream>

#include "hkbound/bitslice.hpp"
#include "hkbound/evalgrid.hpp"

namespace hk {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// FamilySpec

FamilySpec FamilySpec::make(FieldPtr field, int ambient, int degree, MultiPoly fixed,
                            std::vector<Monomial> slots) {
    if (!field) throw PreconditionError("null field spec");
    if (ambient < 2) throw PreconditionError("ambient dimension must be >= 2");
    if (degree < 2) throw PreconditionError("family degree must be >= 2");
    require_same_field(field, fixed.field());
    if (fixed.nvars() != ambient + 1) throw PreconditionError("fixed part variable count mismatch");
    if (!fixed.is_zero() && (!fixed.is_homogeneous() || fixed.degree() != degree))
        throw PreconditionError("fixed part must be homogeneous of the family degree");
    for (size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].deg != degree) throw PreconditionError("slot monomial degree mismatch");
        for (int v = ambient + 1; v < kMaxVars; ++v)
            if (slots[i].e[static_cast<size_t>(v)])
                throw PreconditionError("slot monomial uses variable beyond the ambient space");
        for (size_t j = i + 1; j < slots.size(); ++j)
            if (slots[i] == slots[j]) throw PreconditionError("slot monomials must be distinct");
    }
    uint64_t size = 1;
    for (size_t i = 0; i < slots.size(); ++i) {
        if (size > (1ull << 40) / field->order())
            throw PreconditionError("family too large");
        size *= field->order();
    }
    FamilySpec f;
    f.field = std::move(field);
    f.ambient = ambient;
    f.degree = degree;
    f.fixed = std::move(fixed);
    f.slots = std::move(slots);
    return f;
}

uint64_t FamilySpec::size() const {
    uint64_t s = 1;
    for (size_t i = 0; i < slots.size(); ++i) s *= field->order();
    return s;
}

std::vector<uint32_t> FamilySpec::digits(uint64_t index) const {
    const uint64_t q = field->order();
    std::vector<uint32_t> d(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
        d[i] = static_cast<uint32_t>(index % q);
        index /= q;
    }
    return d;
}

MultiPoly FamilySpec::candidate(uint64_t index) const {
    const auto d = digits(index);
    std::vector<Term> terms(fixed.terms().begin(), fixed.terms().end());
    for (size_t i = 0; i < slots.size(); ++i)
        if (d[i]) terms.push_back({slots[i], d[i]});
    return MultiPoly::from_terms(field, ambient + 1, std::move(terms));
}

std::string FamilySpec::canonical_json() const {
    std::string s = "{\"field\":\"" + field->name() + "\",\"ambient\":" + std::to_string(ambient) +
                    ",\"degree\":" + std::to_string(degree) + ",\"fixed\":\"" + format_poly(fixed) +
                    "\",\"slots\":[";
    for (size_t i = 0; i < slots.size(); ++i) {
        if (i) s += ",";
        s += "\"" + format_poly(MultiPoly::monomial(field, ambient + 1, slots[i], 1)) + "\"";
    }
    return s + "]}";
}

uint64_t FamilySpec::fingerprint() const {
    // FNV-1a, stable across platforms
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical_json()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SearchCounters& SearchCounters::operator+=(const SearchCounters& o) {
    total += o.total;
    rejected_stage1_count += o.rejected_stage1_count;
    rejected_rational_singular += o.rejected_rational_singular;
    rejected_groebner_singular += o.rejected_groebner_singular;
    quarantine += o.quarantine;
    extremal += o.extremal;
    exceptional += o.exceptional;
    return *this;
}

// ---------------------------------------------------------------------------
// precomputed evaluation tables

class FamilyTables {
public:
    // Single-word masks over P^N(F_2) for stage-1 counting.
    bool masks = false;
    size_t npts1 = 0;
    uint64_t fixed_mask = 0;
    std::vector<uint64_t> slot_masks;

    struct Ext {
        std::shared_ptr<const EvalGrid> grid;
        // value vectors: [pt] for the fixed part, [slot][pt] for slots
        std::vector<uint32_t> fixed_F;
        std::vector<std::vector<uint32_t>> slot_F;
        // partial derivative values: [var][pt] and [slot][var][pt]
        std::vector<std::vector<uint32_t>> fixed_partial;
        std::vector<std::vector<std::vector<uint32_t>>> slot_partial;
    };
    std::vector<Ext> exts; // extension degrees 1..3

    explicit FamilyTables(const FamilySpec& fam);
};

namespace {

std::vector<uint32_t> monomial_values(const EvalGrid& grid, const Monomial& m, int nvars) {
    std::vector<uint32_t> vals(grid.npoints());
    for (size_t pt = 0; pt < grid.npoints(); ++pt) {
        uint32_t v = 1;
        for (int j = 0; j < nvars && v; ++j) {
            const uint8_t e = m.e[static_cast<size_t>(j)];
            if (e) v = grid.field()->mul(v, grid.power(pt, j, e));
        }
        vals[pt] = v;
    }
    return vals;
}

std::vector<uint32_t> poly_values(const EvalGrid& grid, const MultiPoly& F) {
    std::vector<uint32_t> vals(grid.npoints());
    for (size_t pt = 0; pt < grid.npoints(); ++pt) vals[pt] = grid.eval(F, pt);
    return vals;
}

} // namespace

FamilyTables::FamilyTables(const FamilySpec& fam) {
    const int nv = fam.ambient + 1;
    if (fam.field->order() == 2) {
        const F2Grid& grid = f2_grid(fam.ambient);
        if (grid.npoints() <= 64) {
            masks = true;
            npts1 = grid.npoints();
            auto fold = [&](const std::vector<uint64_t>& v) { return v.empty() ? 0ull : v[0]; };
            fixed_mask = fold(grid.value_mask(fam.fixed));
            slot_masks.reserve(fam.slots.size());
            for (const auto& m : fam.slots) slot_masks.push_back(fold(grid.monomial_mask(m)));
        }
    }
    for (int m = 1; m <= 3; ++m) {
        Ext e;
        const FieldPtr ext = FieldSpec::extension(fam.field, m);
        e.grid = eval_grid(ext, fam.ambient, fam.degree);
        e.fixed_F = poly_values(*e.grid, fam.fixed.lifted_to(ext));
        e.fixed_partial.resize(static_cast<size_t>(nv));
        for (int v = 0; v < nv; ++v)
            e.fixed_partial[static_cast<size_t>(v)] =
                poly_values(*e.grid, fam.fixed.derivative(v).lifted_to(ext));
        for (const auto& slot : fam.slots) {
            e.slot_F.push_back(monomial_values(*e.grid, slot, nv));
            std::vector<std::vector<uint32_t>> partials(static_cast<size_t>(nv));
            for (int v = 0; v < nv; ++v) {
                MultiPoly mono = MultiPoly::monomial(fam.field, nv, slot, 1);
                partials[static_cast<size_t>(v)] =
                    poly_values(*e.grid, mono.derivative(v).lifted_to(ext));
            }
            e.slot_partial.push_back(std::move(partials));
        }
        exts.push_back(std::move(e));
    }
}

const FamilyTables& family_tables(const FamilySpec& fam) {
    static std::mutex mu;
    static std::map<uint64_t, std::unique_ptr<FamilyTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = fam.fingerprint();
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<FamilyTables>(fam)).first;
    return *it->second;
}

// ---------------------------------------------------------------------------
// per-candidate pipeline

namespace {

int64_t stage1_count(const FamilySpec& fam, const FamilyTables& tb, uint64_t index) {
    if (tb.masks) {
        uint64_t acc = tb.fixed_mask;
        uint64_t bits = index;
        while (bits) {
            const int s = std::countr_zero(bits);
            acc ^= tb.slot_masks[static_cast<size_t>(s)];
            bits &= bits - 1;
        }
        return static_cast<int64_t>(tb.npts1) - std::popcount(acc);
    }
    const auto& e = tb.exts[0];
    const FieldSpec& f = *e.grid->field();
    const auto d = fam.digits(index);
    int64_t count = 0;
    for (size_t pt = 0; pt < e.grid->npoints(); ++pt) {
        uint32_t v = e.fixed_F[pt];
        for (size_t s = 0; s < d.size(); ++s)
            if (d[s]) v = f.add(v, f.mul(d[s], e.slot_F[s][pt]));
        if (v == 0) ++count;
    }
    return count;
}

// true iff the candidate has a rational singular point over extension level m
bool singular_over(const FamilySpec& fam, const FamilyTables& tb, uint64_t index, int m) {
    const auto& e = tb.exts[static_cast<size_t>(m - 1)];
    const FieldSpec& f = *e.grid->field();
    const auto d = fam.digits(index);
    const int nv = fam.ambient + 1;
    for (size_t pt = 0; pt < e.grid->npoints(); ++pt) {
        uint32_t v = e.fixed_F[pt];
        for (size_t s = 0; s < d.size(); ++s)
            if (d[s]) v = f.add(v, f.mul(d[s], e.slot_F[s][pt]));
        if (v != 0) continue;
        bool singular = true;
        for (int var = 0; var < nv && singular; ++var) {
            uint32_t pv = e.fixed_partial[static_cast<size_t>(var)][pt];
            for (size_t s = 0; s < d.size(); ++s)
                if (d[s])
                    pv = f.add(pv, f.mul(d[s], e.slot_partial[s][static_cast<size_t>(var)][pt]));
            if (pv != 0) singular = false;
        }
        if (singular) return true;
    }
    return false;
}

} // namespace

Classified classify_candidate(const FamilySpec& fam, const FamilyTables& tb, uint64_t index,
                              const SearchOptions& opts) {
    Classified out;
    out.points = stage1_count(fam, tb, index);
    if (out.points < opts.min_points) {
        out.category = "rejected_stage1_count";
        return out;
    }
    for (int m = 1; m <= 3; ++m) {
        if (singular_over(fam, tb, index, m)) {
            out.category = "rejected_rational_singular";
            return out;
        }
    }
    const MultiPoly F = fam.candidate(index);
    // a candidate with no rational singular point is nonzero (the zero
    // polynomial is singular everywhere), so the hypersurface is well formed
    try {
        if (!is_projectively_empty(jacobian_ideal(Hypersurface::make(F)), opts.degree_cap)) {
            out.category = "rejected_groebner_singular";
            return out;
        }
    } catch (const DegreeCapError&) {
        out.category = "quarantine";
        return out;
    }
    // nonsingular survivor: cone scan over all rational points
    const Hypersurface X = Hypersurface::make(F);
    int h = 0;
    for (const auto& P : rational_points(X))
        if (tangent_section(X, P).is_cone) ++h;
    out.cone_points = h;
    out.category = h == 0 ? "exceptional" : "extremal";
    return out;
}

// ---------------------------------------------------------------------------
// streaming runner

namespace {

std::string record_line(uint64_t index, const Classified& c, const MultiPoly& poly) {
    std::string s = "{\"index\":" + std::to_string(index) + ",\"category\":\"" + c.category +
                    "\",\"points\":" + std::to_string(c.points) +
                    ",\"cone_points\":" + std::to_string(c.cone_points) + ",\"poly\":\"" +
                    format_poly(poly) + "\"}";
    return s;
}

std::string counters_json(const SearchCounters& c) {
    return "\"total\":" + std::to_string(c.total) +
           ",\"rejected_stage1_count\":" + std::to_string(c.rejected_stage1_count) +
           ",\"rejected_rational_singular\":" + std::to_string(c.rejected_rational_singular) +
           ",\"rejected_groebner_singular\":" + std::to_string(c.rejected_groebner_singular) +
           ",\"quarantine\":" + std::to_string(c.quarantine) +
           ",\"extremal\":" + std::to_string(c.extremal) +
           ",\"exceptional\":" + std::to_string(c.exceptional);
}

std::string fingerprint_hex(uint64_t fp) {
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fp));
    return buf;
}

std::string summary_line(uint64_t fingerprint, uint32_t shard, uint32_t shard_count,
                         const SearchCounters& c) {
    return "{\"summary\":true,\"fingerprint\":\"" + fingerprint_hex(fingerprint) +
           "\",\"shard\":" + std::to_string(shard) +
           ",\"shard_count\":" + std::to_string(shard_count) + "," + counters_json(c) + "}";
}

struct Checkpoint {
    uint64_t cursor = 0; // next absolute candidate index
    uint64_t out_bytes = 0;
    SearchCounters counters;
};

void write_checkpoint(const std::string& path, const FamilySpec& fam, const SearchOptions& opts,
                      const Checkpoint& ck) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw CheckpointError("cannot write checkpoint: " + path);
        f << "{\"fingerprint\":\"" << fingerprint_hex(fam.fingerprint()) << "\",\"shard\":"
          << opts.shard << ",\"shard_count\":" << opts.shard_count << ",\"cursor\":" << ck.cursor
          << ",\"out_bytes\":" << ck.out_bytes << "," << counters_json(ck.counters) << "}";
    }
    fs::rename(tmp, path);
}

uint64_t json_field_u64(const std::string& text, const std::string& key) {
    const std::string pat = "\"" + key + "\":";
    auto pos = text.find(pat);
    if (pos == std::string::npos) throw CheckpointError("checkpoint missing field " + key);
    return std::stoull(text.substr(pos + pat.size()));
}

std::string json_field_str(const std::string& text, const std::string& key) {
    const std::string pat = "\"" + key + "\":\"";
    auto pos = text.find(pat);
    if (pos == std::string::npos) throw CheckpointError("missing field " + key);
    pos += pat.size();
    auto end = text.find('"', pos);
    return text.substr(pos, end - pos);
}

SearchCounters counters_from_json(const std::string& text) {
    SearchCounters c;
    c.total = json_field_u64(text, "total");
    c.rejected_stage1_count = json_field_u64(text, "rejected_stage1_count");
    c.rejected_rational_singular = json_field_u64(text, "rejected_rational_singular");
    c.rejected_groebner_singular = json_field_u64(text, "rejected_groebner_singular");
    c.quarantine = json_field_u64(text, "quarantine");
    c.extremal = json_field_u64(text, "extremal");
    c.exceptional = json_field_u64(text, "exceptional");
    return c;
}

} // namespace

SearchOutcome run_search(const FamilySpec& fam, const SearchOptions& opts,
                         const std::string& out_path) {
    if (opts.shard_count < 1 || opts.shard >= opts.shard_count)
        throw PreconditionError("shard index must satisfy 0 <= i < S");
    const uint64_t fam_size = fam.size();
    const FamilyTables& tables = family_tables(fam);

    Checkpoint ck;
    bool resuming = false;
    if (!opts.checkpoint_path.empty() && fs::exists(opts.checkpoint_path)) {
        std::ifstream f(opts.checkpoint_path);
        std::stringstream ss;
        ss << f.rdbuf();
        const std::string text = ss.str();
        if (json_field_str(text, "fingerprint") != fingerprint_hex(fam.fingerprint()))
            throw CheckpointError("checkpoint belongs to a different family");
        if (json_field_u64(text, "shard") != opts.shard ||
            json_field_u64(text, "shard_count") != opts.shard_count)
            throw CheckpointError("checkpoint belongs to a different shard layout");
        ck.cursor = json_field_u64(text, "cursor");
        ck.out_bytes = json_field_u64(text, "out_bytes");
        ck.counters = counters_from_json(text);
        resuming = true;
    }

    if (resuming) {
        if (!fs::exists(out_path) || fs::file_size(out_path) < ck.out_bytes)
            throw CheckpointError("output file shorter than checkpoint cursor");
        fs::resize_file(out_path, ck.out_bytes);
    } else {
        std::ofstream wipe(out_path, std::ios::trunc);
        if (!wipe) throw Error("cannot open output file: " + out_path);
        // a zero-length run is restartable: the initial checkpoint has cursor 0
        if (!opts.checkpoint_path.empty()) write_checkpoint(opts.checkpoint_path, fam, opts, ck);
    }
    std::ofstream out(out_path, std::ios::app);

    // first shard candidate at or after the cursor
    auto align = [&](uint64_t idx) {
        const uint64_t S = opts.shard_count;
        const uint64_t rem = idx % S;
        const uint64_t target = opts.shard;
        return idx + (target >= rem ? target - rem : S - rem + target);
    };

    const int nthreads = std::max(1, opts.threads);
    // candidates of this shard per block; stop_after needs block granularity
    uint64_t block = 1ull << 16;
    if (opts.stop_after) block = std::min(block, std::max<uint64_t>(1, opts.stop_after));
    if (opts.checkpoint_interval) block = std::min(block, std::max<uint64_t>(1, opts.checkpoint_interval));
    uint64_t processed_this_run = 0;
    uint64_t next_checkpoint = opts.checkpoint_interval;
    bool stopped = false;

    uint64_t idx = align(ck.cursor);
    while (idx < fam_size && !stopped) {
        const uint64_t step = static_cast<uint64_t>(opts.shard_count);
        const uint64_t block_count =
            std::min(block, (fam_size - idx + step - 1) / step);
        // classify the block, split across threads, results kept in order
        std::vector<std::pair<uint64_t, Classified>> results(block_count);
        auto work = [&](uint64_t lo, uint64_t hi) {
            for (uint64_t t = lo; t < hi; ++t)
                results[t] = {idx + t * step,
                              classify_candidate(fam, tables, idx + t * step, opts)};
        };
        if (nthreads == 1 || block_count < 256) {
            work(0, block_count);
        } else {
            std::vector<std::future<void>> futs;
            const uint64_t chunk = (block_count + nthreads - 1) / nthreads;
            for (int t = 0; t < nthreads; ++t) {
                const uint64_t lo = std::min(block_count, chunk * static_cast<uint64_t>(t));
                const uint64_t hi = std::min(block_count, lo + chunk);
                if (lo < hi) futs.push_back(std::async(std::launch::async, work, lo, hi));
            }
            for (auto& f : futs) f.get();
        }
        for (const auto& [cand_idx, c] : results) {
            ck.counters.total += 1;
            if (c.category == "rejected_stage1_count") {
                ck.counters.rejected_stage1_count += 1;
                continue; // counter-only; records start at stage 2
            }
            if (c.category == "rejected_rational_singular") ck.counters.rejected_rational_singular += 1;
            else if (c.category == "rejected_groebner_singular") ck.counters.rejected_groebner_singular += 1;
            else if (c.category == "quarantine") ck.counters.quarantine += 1;
            else if (c.category == "extremal") ck.counters.extremal += 1;
            else if (c.category == "exceptional") ck.counters.exceptional += 1;
            const std::string line = record_line(cand_idx, c, fam.candidate(cand_idx)) + "\n";
            out << line;
            ck.out_bytes += line.size();
        }
        idx += block_count * step;
        ck.cursor = idx;
        processed_this_run += block_count;
        if (opts.stop_after && processed_this_run >= opts.stop_after && idx < fam_size) stopped = true;
        if (!opts.checkpoint_path.empty() &&
            (stopped || processed_this_run >= next_checkpoint || idx >= fam_size)) {
            out.flush();
            write_checkpoint(opts.checkpoint_path, fam, opts, ck);
            next_checkpoint = processed_this_run + opts.checkpoint_interval;
        }
    }

    SearchOutcome outcome;
    outcome.counters = ck.counters;
    outcome.completed = !stopped;
    if (!stopped) {
        out << summary_line(fam.fingerprint(), opts.shard, opts.shard_count, ck.counters) << "\n";
        out.flush();
    }
    return outcome;
}

void merge_results(const std::vector<std::string>& shard_files, const std::string& out_path) {
    if (shard_files.empty()) throw PreconditionError("no shard files to merge");
    std::vector<std::pair<uint64_t, std::string>> records;
    SearchCounters total;
    std::string fingerprint;
    uint64_t shard_count = 0;
    std::vector<bool> shard_seen;
    for (const auto& path : shard_files) {
        std::ifstream f(path);
        if (!f) throw PreconditionError("cannot open shard file: " + path);
        std::string line;
        bool saw_summary = false;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            if (line.find("\"summary\":true") != std::string::npos) {
                const std::string fp = json_field_str(line, "fingerprint");
                if (fingerprint.empty()) fingerprint = fp;
                else if (fingerprint != fp)
                    throw PreconditionError("shard files come from different families");
                const uint64_t sc = json_field_u64(line, "shard_count");
                const uint64_t si = json_field_u64(line, "shard");
                if (shard_count == 0) {
                    shard_count = sc;
                    shard_seen.assign(sc, false);
                } else if (shard_count != sc) {
                    throw PreconditionError("shard files disagree on shard count");
                }
                if (si >= sc || shard_seen[si])
                    throw PreconditionError("overlapping or invalid shard index " + std::to_string(si));
                shard_seen[si] = true;
                total += counters_from_json(line);
                saw_summary = true;
            } else {
                records.emplace_back(json_field_u64(line, "index"), line);
            }
        }
        if (!saw_summary)
            throw PreconditionError("shard file incomplete (no summary line): " + path);
    }
    for (size_t i = 0; i < shard_seen.size(); ++i)
        if (!shard_seen[i])
            throw PreconditionError("missing shard " + std::to_string(i) + " of " +
                                    std::to_string(shard_count));
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < records.size(); ++i)
        if (records[i].first == records[i - 1].first)
            throw PreconditionError("overlapping shards: duplicate candidate index " +
                                    std::to_string(records[i].first));
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw Error("cannot open output file: " + out_path);
    for (const auto& [unused_idx, line] : records) {
        (void)unused_idx;
        out << line << "\n";
    }
    uint64_t fp_val = std::stoull(fingerprint, nullptr, 16);
    out << summary_line(fp_val, 0, 1, total) << "\n";
}

} // namespace hk
