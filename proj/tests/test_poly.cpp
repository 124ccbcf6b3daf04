#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {
MultiPoly p2(const char* text, int nvars = -1) {
    return parse_poly(FieldSpec::prime(2), text, nvars);
}
} // namespace

TEST_CASE("grevlex order") {
    // degree first, then reverse-lex: x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
    auto f = p2("x0^2 + x0*x1 + x1^2 + x0*x2 + x1*x2 + x2^2", 3);
    REQUIRE(f.terms().size() == 6);
    const char* expect[] = {"x0^2", "x0*x1", "x1^2", "x0*x2", "x1*x2", "x2^2"};
    for (size_t i = 0; i < 6; ++i) {
        CHECK(format_poly(MultiPoly::monomial(f.field(), 3, f.terms()[i].mono, 1)) == expect[i]);
    }
}

TEST_CASE("evaluation") {
    auto F = p2("x0^2*x1", 5);
    const uint32_t pt[] = {1, 1, 0, 0, 0};
    CHECK(F.evaluate(std::span<const uint32_t>(pt, 5)) == 1);
    const uint32_t zero[] = {0, 0, 0, 0, 0};
    CHECK(F.evaluate(std::span<const uint32_t>(zero, 5)) == 0);
    auto ex1 = fixtures::extremal_cubic_poly();
    CHECK(ex1.evaluate(ProjPoint::parse(FieldSpec::prime(2), "(1:0:0:0:0)")) == 0);
    CHECK_THROWS_AS(F.evaluate(std::span<const uint32_t>(pt, 3)), PreconditionError);
}

TEST_CASE("derivatives in characteristic p") {
    CHECK(p2("x0^2*x1", 5).derivative(1) == p2("x0^2", 5));
    CHECK(p2("x0^2", 5).derivative(0).is_zero()); // coefficient 2 = 0
    auto f4 = FieldSpec::prime_power(2, 2);
    auto fermat = parse_poly(f4, "x0^3 + x1^3 + x2^3", 3);
    for (int i = 0; i < 3; ++i) {
        auto d = fermat.derivative(i);
        CHECK(d == MultiPoly::monomial(f4, 3, Monomial::var(i, 2), 1)); // 3 = 1 in char 2
    }
}

TEST_CASE("Euler relation") {
    std::mt19937_64 rng(23);
    for (uint64_t q : {2ull, 3ull}) {
        auto f = FieldSpec::from_order(q);
        for (int trial = 0; trial < 40; ++trial) {
            for (int d : {2, 3, 4}) {
                auto F = oracle::random_form(rng, f, 4, d);
                if (F.is_zero()) continue;
                MultiPoly sum = MultiPoly::zero(f, 4);
                for (int i = 0; i < 4; ++i)
                    sum = sum + MultiPoly::monomial(f, 4, Monomial::var(i), 1) * F.derivative(i);
                CHECK(sum == F.scaled(f->from_int(d)));
            }
        }
    }
}

TEST_CASE("projectivities") {
    auto f2 = FieldSpec::prime(2);
    auto F = p2("x0^2*x1", 3);
    auto id = Projectivity::identity(f2, 2);
    CHECK(apply_projectivity(F, id) == F);

    // swap x0 <-> x1
    Projectivity swap = Projectivity::from_matrix(f2, 2, {0, 1, 0, 1, 0, 0, 0, 0, 1});
    CHECK(apply_projectivity(F, swap) == p2("x1^2*x0", 3));

    // inverse composes to the identity on random inputs
    std::mt19937_64 rng(31);
    auto f3 = FieldSpec::prime(3);
    std::uniform_int_distribution<uint32_t> pick(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<uint32_t> mat(25);
        Projectivity T;
        while (true) {
            for (auto& v : mat) v = pick(rng);
            try {
                T = Projectivity::from_matrix(f3, 4, mat);
                break;
            } catch (const PreconditionError&) {
            }
        }
        auto F3 = oracle::random_form(rng, f3, 5, 3);
        if (F3.is_zero()) continue;
        CHECK(apply_projectivity(apply_projectivity(F3, T), T.inverse()) == F3);
        CHECK(apply_projectivity(F3, T).degree() == F3.degree());
    }
}

TEST_CASE("restriction to subspaces") {
    auto f2 = FieldSpec::prime(2);
    auto F = p2("x0*x1 + x2*x3", 4);
    auto l = line_through(ProjPoint::parse(f2, "(1:0:0:0)"), ProjPoint::parse(f2, "(0:1:0:0)"));
    CHECK(restrict_to_subspace(F, l) == p2("x0*x1", 2));

    // a line inside V(F) restricts to zero
    auto l0 = line_through(ProjPoint::parse(f2, "(1:0:0:0)"), ProjPoint::parse(f2, "(0:0:1:0)"));
    CHECK(restrict_to_subspace(F, l0).is_zero());

    // the x4-free terms survive restriction to {x4 = 0}
    auto ex1 = fixtures::extremal_cubic_poly();
    std::vector<std::vector<uint32_t>> rows;
    for (int i = 0; i < 4; ++i) {
        std::vector<uint32_t> r(5, 0);
        r[static_cast<size_t>(i)] = 1;
        rows.push_back(r);
    }
    auto hyp = LinearSubspace::from_rows(f2, 4, rows);
    auto restricted = restrict_to_subspace(ex1, hyp);
    CHECK(restricted ==
          p2("x0^2*x1 + x0*x1^2 + x0*x1*x2 + x0*x2^2 + x1*x2^2 + x2^3 + x0*x2*x3 + x2^2*x3", 4));
    CHECK(restricted.terms().size() == 8);
}

TEST_CASE("restriction vanishes iff the subspace lies in the hypersurface") {
    // equivalence with point tests over F_q and F_{q^2} for small degree
    std::mt19937_64 rng(37);
    for (uint64_t q : {2ull, 3ull}) {
        auto f = FieldSpec::from_order(q);
        auto ext = FieldSpec::extension(f, 2);
        auto subs = subspaces_of_dim(3, 1, f);
        std::uniform_int_distribution<size_t> pick(0, subs.size() - 1);
        for (int trial = 0; trial < 60; ++trial) {
            auto F = oracle::random_form(rng, f, 4, 3);
            if (F.is_zero()) continue;
            const auto& S = subs[pick(rng)];
            const bool restricted_zero = restrict_to_subspace(F, S).is_zero();
            bool all_points_zero = true;
            auto F_ext = F.lifted_to(ext);
            // rational points of S over F_q and over F_{q^2}
            for (const auto& p : S.rational_points())
                if (F.evaluate(p) != 0) all_points_zero = false;
            for (const auto& t : enumerate_points(S.dim, ext)) {
                std::vector<uint32_t> v(5, 0);
                for (size_t i = 0; i < S.rows.size(); ++i)
                    for (size_t j = 0; j < 4; ++j)
                        v[j] = ext->add(v[j], ext->mul(t.coords[i], S.rows[i][j]));
                v.resize(4);
                bool nonzero = false;
                for (uint32_t c : v) nonzero |= c != 0;
                if (!nonzero) continue;
                if (F_ext.evaluate(std::span<const uint32_t>(v.data(), 4)) != 0)
                    all_points_zero = false;
            }
            CHECK(restricted_zero == all_points_zero);
        }
    }
}

TEST_CASE("x0 decomposition") {
    auto F = p2("x0*x1^2 + x2^3", 3);
    auto dec = x0_decomposition(F);
    REQUIRE(dec.degree == 3);
    CHECK(dec.comps[1].is_zero());
    CHECK(dec.comps[2] == p2("x0^2", 2)); // x1^2 reindexed
    CHECK(dec.comps[3] == p2("x1^3", 2)); // x2^3 reindexed
    CHECK(dec.min_nonzero == 2);

    // independent of x0: single component F_d = F
    auto G = p2("x1^3 + x1*x2^2", 3);
    auto decG = x0_decomposition(G);
    CHECK(decG.min_nonzero == 3);
    CHECK(decG.comps[3] == p2("x0^3 + x0*x1^2", 2));

    // x0^d coefficient nonzero is rejected
    CHECK_THROWS_AS(x0_decomposition(p2("x0^3 + x1^3", 3)), PreconditionError);

    // reconstruction is exact on random forms
    std::mt19937_64 rng(41);
    auto f3 = FieldSpec::prime(3);
    for (int trial = 0; trial < 80; ++trial) {
        auto F3 = oracle::random_form(rng, f3, 5, 3);
        if (F3.is_zero() || F3.coeff(Monomial::var(0, 3)) != 0) continue;
        auto d3 = x0_decomposition(F3);
        CHECK(x0_recompose(d3, f3, 5) == F3);
    }
}

TEST_CASE("linear factor split") {
    {
        auto split = linear_factor_split(p2("x1*x2", 3) * p2("x1+x2", 3));
        CHECK(split.factors.size() == 3);
        CHECK(split.remainder.degree() == 0);
        MultiPoly prod = split.remainder;
        for (const auto& f : split.factors) prod = prod * f;
        CHECK(prod == p2("x1*x2", 3) * p2("x1+x2", 3));
    }
    {
        auto split = linear_factor_split(p2("x1^2 + x1*x2 + x2^2", 3));
        CHECK(split.factors.empty()); // irreducible over F_2
        CHECK(split.remainder == p2("x1^2 + x1*x2 + x2^2", 3));
    }
    {
        auto split = linear_factor_split(p2("x1^2", 3));
        REQUIRE(split.factors.size() == 2);
        CHECK(split.factors[0] == split.factors[1]);
        CHECK(split.factors[0] == p2("x1", 3));
    }
    // exactness on random ternary forms over F_3
    std::mt19937_64 rng(43);
    auto f3 = FieldSpec::prime(3);
    for (int trial = 0; trial < 100; ++trial) {
        auto G = oracle::random_form(rng, f3, 3, 3);
        if (G.is_zero()) continue;
        auto split = linear_factor_split(G);
        MultiPoly prod = split.remainder;
        for (const auto& f : split.factors) prod = prod * f;
        CHECK(prod == G);
        // remainder admits no further rational linear factor
        if (split.remainder.degree() >= 1)
            CHECK(linear_factor_split(split.remainder).factors.empty());
    }
}

TEST_CASE("parse and format round trip") {
    auto F = p2("x0^2*x1 + x2^3");
    CHECK(F.nvars() == 3);
    CHECK(F.terms().size() == 2);
    CHECK(F.degree() == 3);
    CHECK(format_poly(F) == "x0^2*x1 + x2^3");
    CHECK(parse_poly(FieldSpec::prime(2), format_poly(F), 3) == F);

    auto ex1 = fixtures::extremal_cubic_poly();
    CHECK(ex1.nvars() == 5);
    CHECK(ex1.degree() == 3);
    CHECK(ex1.terms().size() == 16);
    CHECK(ex1.is_homogeneous());
    CHECK(parse_poly(FieldSpec::prime(2), format_poly(ex1), 5) == ex1);

    // coefficients in extension fields need their literal syntax
    auto f4 = FieldSpec::prime_power(2, 2);
    auto G = parse_poly(f4, "(g+1)*x0^2 + g*x0*x1 + x1^2", 2);
    CHECK(G.terms().size() == 3);
    CHECK(parse_poly(f4, format_poly(G), 2) == G);

    CHECK_THROWS_AS(parse_poly(FieldSpec::prime(2), "x0^2 + + x1", 3), ParseError);
    CHECK_THROWS_AS(parse_poly(FieldSpec::prime(2), "y0", 3), ParseError);
    CHECK_THROWS_AS(parse_homogeneous_poly(FieldSpec::prime(2), "x0^2 + x1", 3), ParseError);
    CHECK(parse_poly(FieldSpec::prime(2), "0", 3).is_zero());
}

TEST_CASE("homogeneity bookkeeping") {
    CHECK(p2("x0^2 + x1*x2", 3).is_homogeneous());
    CHECK(!p2("x0^2 + x1", 3).is_homogeneous());
    CHECK(p2("0", 3).is_homogeneous());
    CHECK(p2("x0^2 + x1*x2", 3).degree() == 2);
    CHECK(p2("0", 1).degree() == -1);
}
