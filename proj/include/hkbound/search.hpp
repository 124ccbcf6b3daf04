#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hkbound/geometry.hpp"

namespace hk {

// Coefficient family: fixed part plus one free coefficient per slot
// monomial. Candidate index is the mixed-radix integer over the slot
// assignments in the field's canonical element order, slot 0 fastest.
struct FamilySpec {
    FieldPtr field;
    int ambient = 0;
    int degree = 0;
    MultiPoly fixed;
    std::vector<Monomial> slots;

    static FamilySpec make(FieldPtr field, int ambient, int degree, MultiPoly fixed,
                           std::vector<Monomial> slots);
    uint64_t size() const; // q^(#slots)
    std::vector<uint32_t> digits(uint64_t index) const;
    MultiPoly candidate(uint64_t index) const;
    // Whitespace-free ordered JSON; the fingerprint hashes exactly this.
    std::string canonical_json() const;
    uint64_t fingerprint() const;
};

struct SearchCounters {
    uint64_t total = 0;
    uint64_t rejected_stage1_count = 0;
    uint64_t rejected_rational_singular = 0;
    uint64_t rejected_groebner_singular = 0;
    uint64_t quarantine = 0;
    uint64_t extremal = 0;
    uint64_t exceptional = 0;

    SearchCounters& operator+=(const SearchCounters& o);
    bool operator==(const SearchCounters& o) const = default;
};

struct SearchOptions {
    int64_t min_points = 0;
    uint32_t shard = 0;
    uint32_t shard_count = 1;
    int threads = 1;
    std::string checkpoint_path;             // empty: no checkpointing
    uint64_t checkpoint_interval = 1u << 22; // candidates between checkpoints
    uint64_t stop_after = 0;                 // test hook: clean stop after >= this many candidates
    int degree_cap = kDefaultDegreeCap;
};

struct SearchOutcome {
    SearchCounters counters;
    bool completed = true; // false when stop_after cut the run short
};

// Classification of one candidate, shared by the runner and by tests.
struct Classified {
    std::string category; // rejected_stage1_count / rejected_rational_singular /
                          // rejected_groebner_singular / quarantine / extremal / exceptional
    int64_t points = 0;
    int cone_points = -1; // only computed for stage-4 survivors
};

// Precomputed per-family evaluation tables (stage 1 masks, extension scans).
class FamilyTables;
const FamilyTables& family_tables(const FamilySpec& fam);
Classified classify_candidate(const FamilySpec& fam, const FamilyTables& tables,
                              uint64_t index, const SearchOptions& opts);

// Runs the staged pipeline over every candidate index congruent to
// opts.shard mod opts.shard_count, streaming one JSON record per candidate
// that survives stage 1 into out_path and a trailing summary line. Output is
// byte-identical across thread counts and across checkpoint interruptions.
SearchOutcome run_search(const FamilySpec& fam, const SearchOptions& opts,
                         const std::string& out_path);

// Concatenates completed shard outputs (sorted by candidate index, counters
// summed); the result is byte-identical to a single-shard run.
void merge_results(const std::vector<std::string>& shard_files, const std::string& out_path);

} // namespace hk
