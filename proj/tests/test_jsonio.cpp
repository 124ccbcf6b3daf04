#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "hkbound/jsonio.hpp"
#include "schema_check.hpp"

using namespace hk;

namespace {
std::string check(const std::string& text, const std::string& schema) {
    std::string err;
    if (hk::schema::validate_text(text, schema, &err)) return "";
    return err.empty() ? "invalid" : err;
}
} // namespace

TEST_CASE("bound report JSON validates") {
    auto rep = bound_report(fixtures::parabolic_quadric_f2());
    CHECK(check(to_json(rep), "bound_report.schema.json") == "");
    auto rep2 = bound_report(fixtures::extremal_cubic());
    CHECK(check(to_json(rep2), "bound_report.schema.json") == "");
    CHECK(to_json(rep2).find("\"witness\"") != std::string::npos);
}

TEST_CASE("analyze JSON validates") {
    auto out = analyze(fixtures::parabolic_quadric_f2());
    CHECK(check(to_json(out), "analyze.schema.json") == "");
}

TEST_CASE("tangent section JSON validates") {
    auto X = fixtures::parabolic_quadric_f2();
    auto rep = tangent_section(X, ProjPoint::parse(X.field, "(0:1:0:0:0)"));
    CHECK(check(to_json(rep), "tangent_section.schema.json") == "");
}

TEST_CASE("pencil JSON validates") {
    auto X = Hypersurface::make(
        parse_homogeneous_poly(FieldSpec::prime(2), "x0*x1 + x2*x3", 5));
    auto l = line_through(ProjPoint::parse(X.field, "(1:0:0:0:0)"),
                          ProjPoint::parse(X.field, "(0:0:1:0:0)"));
    CHECK(check(to_json(pencil_stats(X, l)), "pencil.schema.json") == "");
}

TEST_CASE("family JSON round trips and validates") {
    std::ifstream f(std::string(HK_SOURCE_DIR) + "/families/flagship_cubics_f2.json");
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(check(ss.str(), "family.schema.json") == "");
    auto fam = parse_family_json(ss.str());
    CHECK(fam.size() == (1ull << 25));
    CHECK(check(fam.canonical_json(), "family.schema.json") == "");
    CHECK(parse_family_json(fam.canonical_json()).fingerprint() == fam.fingerprint());
}

TEST_CASE("search records validate line by line") {
    auto f2 = FieldSpec::prime(2);
    std::vector<Monomial> slots;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) slots.push_back(Monomial::var(i).times(Monomial::var(j)));
    auto fam = FamilySpec::make(f2, 3, 2, MultiPoly::zero(f2, 4), slots);
    const std::string out =
        (std::filesystem::temp_directory_path() / "hk_jsonio_records.jsonl").string();
    SearchOptions opts;
    run_search(fam, opts, out);
    std::ifstream rf(out);
    std::string line;
    size_t records = 0, summaries = 0;
    while (std::getline(rf, line)) {
        if (line.empty()) continue;
        if (line.find("\"summary\":true") != std::string::npos) {
            CHECK(check(line, "search_summary.schema.json") == "");
            ++summaries;
        } else {
            CHECK(check(line, "search_record.schema.json") == "");
            ++records;
        }
    }
    CHECK(summaries == 1);
    CHECK(records > 0);
    std::filesystem::remove(out);
}

TEST_CASE("bad family JSON is rejected") {
    CHECK_THROWS_AS(parse_family_json("{"), ParseError);
    CHECK_THROWS_AS(parse_family_json(R"({"field":"2"})"), ParseError);
    CHECK_THROWS_AS(parse_family_json(
                        R"({"field":"2","ambient":4,"degree":3,"fixed":"0","slots":["x0^2*x1 + x2^3"]})"),
                    ParseError); // slot must be a single monomial
}
