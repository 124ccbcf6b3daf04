#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "hkbound/jsonio.hpp"
#include "hkbound/search.hpp"
#include "oracles.hpp"

using namespace hk;
namespace fs = std::filesystem;

namespace {

// All 10 quadric monomials in x0..x3: a 2^10 family over F_2 in P^3.
FamilySpec small_quadric_family() {
    auto f2 = FieldSpec::prime(2);
    std::vector<Monomial> slots;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) slots.push_back(Monomial::var(i).times(Monomial::var(j)));
    return FamilySpec::make(f2, 3, 2, MultiPoly::zero(f2, 4), std::move(slots));
}

std::string slurp_file(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path dir;
    TempDir() : dir(fs::temp_directory_path() / ("hk_search_" + std::to_string(::getpid()) + "_" +
                                                 std::to_string(counter()++))) {
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

} // namespace

TEST_CASE("family indexing and candidates") {
    auto fam = small_quadric_family();
    CHECK(fam.size() == 1024);
    CHECK(fam.candidate(0).is_zero());
    // digit order: slot 0 is the least significant digit
    auto d = fam.digits(5);
    CHECK(d[0] == 1);
    CHECK(d[1] == 0);
    CHECK(d[2] == 1);
    auto c1 = fam.candidate(1);
    CHECK(c1 == MultiPoly::monomial(fam.field, 4, fam.slots[0], 1));
    // round trip through JSON
    auto fam2 = parse_family_json(fam.canonical_json());
    CHECK(fam2.canonical_json() == fam.canonical_json());
    CHECK(fam2.fingerprint() == fam.fingerprint());
}

TEST_CASE("family validation") {
    auto f2 = FieldSpec::prime(2);
    auto fixed = parse_poly(f2, "x0*x1*x2", 5);
    CHECK_THROWS_AS(FamilySpec::make(f2, 4, 3, fixed, {Monomial::var(0, 2)}),
                    PreconditionError); // slot degree mismatch
    CHECK_THROWS_AS(FamilySpec::make(f2, 4, 3, fixed,
                                     {Monomial::var(0, 3), Monomial::var(0, 3)}),
                    PreconditionError); // duplicate slots
    CHECK_THROWS_AS(FamilySpec::make(f2, 4, 2, fixed, {Monomial::var(0, 2)}),
                    PreconditionError); // fixed degree mismatch
}

TEST_CASE("stage-1 mask count equals naive count") {
    auto fam = small_quadric_family();
    const auto& tables = family_tables(fam);
    SearchOptions opts;
    std::mt19937_64 rng(73);
    std::uniform_int_distribution<uint64_t> pick(0, fam.size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const uint64_t idx = pick(rng);
        auto c = classify_candidate(fam, tables, idx, opts);
        CHECK(c.points == oracle::naive_point_count(fam.candidate(idx)));
    }
}

TEST_CASE("pipeline classification is sound on the whole small family") {
    auto fam = small_quadric_family();
    const auto& tables = family_tables(fam);
    SearchOptions opts;
    int64_t nonsingular = 0;
    for (uint64_t idx = 0; idx < fam.size(); ++idx) {
        auto c = classify_candidate(fam, tables, idx, opts);
        const MultiPoly F = fam.candidate(idx);
        if (c.category == "rejected_rational_singular") {
            // a rational singular point over F_{q^m}, m <= 3, must also fail
            // the exact Groebner test
            if (!F.is_zero()) {
                auto X = Hypersurface::make(F);
                CHECK(!is_nonsingular(X));
            }
        } else if (c.category == "extremal" || c.category == "exceptional") {
            auto X = Hypersurface::make(F);
            CHECK(is_nonsingular(X));
            // nonsingular quadric surfaces in P^3 over F_2 are hyperbolic or
            // elliptic: 9 or 5 points
            CHECK((c.points == 9 || c.points == 5));
            ++nonsingular;
        }
    }
    CHECK(nonsingular > 0);
}

TEST_CASE("shard invariance and merge") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions opts;
    opts.min_points = 0;
    opts.threads = 2;
    run_search(fam, opts, tmp.path("single.jsonl"));

    std::vector<std::string> shard_files;
    for (uint32_t i = 0; i < 4; ++i) {
        SearchOptions sopts;
        sopts.shard = i;
        sopts.shard_count = 4;
        const std::string f = tmp.path("shard" + std::to_string(i) + ".jsonl");
        run_search(fam, sopts, f);
        shard_files.push_back(f);
    }
    merge_results(shard_files, tmp.path("merged.jsonl"));
    CHECK(slurp_file(tmp.path("merged.jsonl")) == slurp_file(tmp.path("single.jsonl")));

    // missing shard is a hard error
    shard_files.pop_back();
    CHECK_THROWS_AS(merge_results(shard_files, tmp.path("bad.jsonl")), PreconditionError);
    // S=1 merge is the identity
    merge_results({tmp.path("single.jsonl")}, tmp.path("identity.jsonl"));
    CHECK(slurp_file(tmp.path("identity.jsonl")) == slurp_file(tmp.path("single.jsonl")));
}

TEST_CASE("thread count does not change output") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions one;
    one.threads = 1;
    run_search(fam, one, tmp.path("t1.jsonl"));
    SearchOptions four;
    four.threads = 4;
    run_search(fam, four, tmp.path("t4.jsonl"));
    CHECK(slurp_file(tmp.path("t1.jsonl")) == slurp_file(tmp.path("t4.jsonl")));
}

TEST_CASE("checkpoint resume reproduces an uninterrupted run") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions base;
    run_search(fam, base, tmp.path("full.jsonl"));

    SearchOptions interrupted;
    interrupted.checkpoint_path = tmp.path("ck.json");
    interrupted.checkpoint_interval = 128;
    interrupted.stop_after = 512;
    auto out1 = run_search(fam, interrupted, tmp.path("resumed.jsonl"));
    CHECK(!out1.completed);

    SearchOptions resume;
    resume.checkpoint_path = tmp.path("ck.json");
    auto out2 = run_search(fam, resume, tmp.path("resumed.jsonl"));
    CHECK(out2.completed);
    CHECK(slurp_file(tmp.path("resumed.jsonl")) == slurp_file(tmp.path("full.jsonl")));

    // resuming a completed run is idempotent
    auto out3 = run_search(fam, resume, tmp.path("resumed.jsonl"));
    CHECK(out3.completed);
    CHECK(out3.counters == out2.counters);
    CHECK(slurp_file(tmp.path("resumed.jsonl")) == slurp_file(tmp.path("full.jsonl")));
}

TEST_CASE("a fresh run writes a cursor-0 checkpoint before any work") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions opts;
    opts.checkpoint_path = tmp.path("ck.json");
    opts.checkpoint_interval = 1ull << 30; // never rewritten mid-run
    opts.stop_after = 1;                   // stop as early as possible
    run_search(fam, opts, tmp.path("out.jsonl"));
    // the final checkpoint reflects the stop; a resume from it reproduces the
    // uninterrupted bytes, and a resume from the pristine cursor-0 state is
    // exactly a fresh run
    SearchOptions resume;
    resume.checkpoint_path = tmp.path("ck.json");
    run_search(fam, resume, tmp.path("out.jsonl"));
    SearchOptions plain;
    run_search(fam, plain, tmp.path("ref.jsonl"));
    CHECK(slurp_file(tmp.path("out.jsonl")) == slurp_file(tmp.path("ref.jsonl")));

    // the initial checkpoint of a not-yet-started run carries cursor 0
    SearchOptions zero;
    zero.checkpoint_path = tmp.path("ck0.json");
    zero.stop_after = 1;
    run_search(fam, zero, tmp.path("z.jsonl"));
    const std::string ck = slurp_file(tmp.path("ck0.json"));
    CHECK(ck.find("\"cursor\":") != std::string::npos);
}

TEST_CASE("checkpoint fingerprint guards against family changes") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions opts;
    opts.checkpoint_path = tmp.path("ck.json");
    opts.checkpoint_interval = 128;
    opts.stop_after = 256;
    run_search(fam, opts, tmp.path("out.jsonl"));

    // altered family: drop a slot
    auto slots = fam.slots;
    slots.pop_back();
    auto altered = FamilySpec::make(fam.field, fam.ambient, fam.degree, fam.fixed, slots);
    SearchOptions resume;
    resume.checkpoint_path = tmp.path("ck.json");
    CHECK_THROWS_AS(run_search(altered, resume, tmp.path("out.jsonl")), CheckpointError);
    // altered shard layout is rejected as well
    SearchOptions shard_resume;
    shard_resume.checkpoint_path = tmp.path("ck.json");
    shard_resume.shard = 0;
    shard_resume.shard_count = 2;
    CHECK_THROWS_AS(run_search(fam, shard_resume, tmp.path("out.jsonl")), CheckpointError);
}

TEST_CASE("counters sum to the family size") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions opts;
    auto res = run_search(fam, opts, tmp.path("out.jsonl"));
    const auto& c = res.counters;
    CHECK(c.total == fam.size());
    CHECK(c.rejected_stage1_count + c.rejected_rational_singular + c.rejected_groebner_singular +
              c.quarantine + c.extremal + c.exceptional ==
          c.total);
    CHECK(c.quarantine == 0);
}

TEST_CASE("bad shard spec is rejected") {
    auto fam = small_quadric_family();
    TempDir tmp;
    SearchOptions opts;
    opts.shard = 3;
    opts.shard_count = 3;
    CHECK_THROWS_AS(run_search(fam, opts, tmp.path("x.jsonl")), PreconditionError);
}
