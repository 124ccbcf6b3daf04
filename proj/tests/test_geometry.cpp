#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace hk;

namespace {
Hypersurface hyp2(const char* text, int nvars) {
    return Hypersurface::make(parse_homogeneous_poly(FieldSpec::prime(2), text, nvars));
}
} // namespace

TEST_CASE("point counts") {
    CHECK(point_count(fixtures::extremal_cubic()) == 27);
    CHECK(point_count(fixtures::parabolic_quadric_f2()) == 15);
    CHECK(point_count(fixtures::hermitian_cubic_f4()) == 165);
    // fast path equals naive enumeration
    CHECK(oracle::naive_point_count(fixtures::extremal_cubic_poly()) == 27);
}

TEST_CASE("singular point scans") {
    auto X = hyp2("x0*x1", 4); // quadric in P^3, singular along {x0=x1=0}
    auto sing = singular_points_over(X, 1);
    CHECK(sing.size() == 3);
    for (const auto& p : sing) {
        CHECK(p.coords[0] == 0);
        CHECK(p.coords[1] == 0);
    }
    for (int m = 1; m <= 3; ++m) CHECK(singular_points_over(fixtures::extremal_cubic(), m).empty());
    auto fermat2 = hyp2("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", 5);
    for (int m = 1; m <= 3; ++m) CHECK(singular_points_over(fermat2, m).empty());
}

TEST_CASE("nonsingularity verdicts") {
    CHECK(is_nonsingular(fixtures::extremal_cubic()));
    CHECK(!is_nonsingular(hyp2("x0*x1", 4)));
    // cone over a positive-dimensional base is singular at the vertex
    CHECK(!is_nonsingular(hyp2("x1^3 + x2^3 + x3^3 + x4^3", 5)));
    CHECK(is_nonsingular(fixtures::parabolic_quadric_f2()));
    CHECK(is_nonsingular(fixtures::hermitian_cubic_f4()));
}

TEST_CASE("tangent section of the parabolic quadric") {
    auto X = fixtures::parabolic_quadric_f2();
    auto P = ProjPoint::parse(X.field, "(0:1:0:0:0)");
    auto rep = tangent_section(X, P);
    // tangent hyperplane {x2 = 0}
    for (const auto& pt : rep.tangent.rational_points()) CHECK(pt.coords[2] == 0);
    CHECK(rep.is_cone);
    REQUIRE(rep.base);
    CHECK(rep.base->degree == 2);
    CHECK(rep.base->ambient == 2);
    CHECK(point_count(*rep.base) == 3); // q+1 on a smooth conic
    CHECK(cone_base_nonsingular(rep));
    // section is independent of the vertex coordinate
    CHECK(!rep.section.uses_var(0));
    // the tangent cone equals the full section exactly in the cone case
    CHECK(rep.tangent_cone == rep.components[2]);
}

TEST_CASE("non-cone sections have lower components") {
    auto X = fixtures::extremal_cubic();
    bool saw_non_cone = false;
    for (const auto& P : rational_points(X)) {
        auto rep = tangent_section(X, P);
        if (!rep.is_cone) {
            saw_non_cone = true;
            CHECK(rep.min_degree < X.degree);
            CHECK(!rep.components[static_cast<size_t>(rep.min_degree)].is_zero());
        }
        // the section vanishes at the image of P, i.e. it has no x0^d term
        CHECK(rep.section.coeff(Monomial::var(0, X.degree)) == 0);
    }
    CHECK(saw_non_cone);
}

TEST_CASE("the extremal cubic has a cone point with a 5-point base") {
    auto X = fixtures::extremal_cubic();
    int cones = 0;
    bool witness = false;
    for (const auto& P : rational_points(X)) {
        auto rep = tangent_section(X, P);
        if (!rep.is_cone) continue;
        ++cones;
        CHECK(cone_base_nonsingular(rep));
        if (point_count(*rep.base) == 5) witness = true; // (d-1)q+1
    }
    CHECK(cones >= 1);
    CHECK(witness);
}

TEST_CASE("synthetic cone over a nodal cubic exercises the contrapositive") {
    // F = x4*x0^2 + (nodal cubic in x1,x2,x3); P = (1:0:0:0:0) is nonsingular
    // on X, the tangent section there is the cone over the nodal base.
    auto X = hyp2("x4*x0^2 + x2^2*x3 + x1^3 + x1^2*x3", 5);
    auto P = ProjPoint::parse(X.field, "(1:0:0:0:0)");
    auto rep = tangent_section(X, P);
    REQUIRE(rep.is_cone);
    CHECK(!cone_base_nonsingular(rep));
    CHECK(!is_nonsingular(X)); // a nonsingular X could not produce this
}

TEST_CASE("tangent section preconditions") {
    auto X = fixtures::parabolic_quadric_f2();
    CHECK_THROWS_AS(tangent_section(X, ProjPoint::parse(X.field, "(1:0:0:0:0)")),
                    PreconditionError); // not on X
    auto cone = hyp2("x1^3 + x2^3 + x3^3 + x4^3", 5);
    CHECK_THROWS_AS(tangent_section(cone, ProjPoint::parse(X.field, "(1:0:0:0:0)")),
                    PreconditionError); // singular point of X
}

TEST_CASE("line locus parametrizes lines through the point") {
    auto Q = fixtures::hyperbolic_quadric_f2(); // x0*x1 + x2*x3 in P^3
    auto P = ProjPoint::parse(Q.field, "(1:0:0:0)");
    auto locus = line_locus(Q, P);
    CHECK(locus.lines.size() == 2); // two rulings through each point
    for (const auto& l : locus.lines) {
        CHECK(l.contains(P));
        CHECK(restrict_to_subspace(Q.F, l).is_zero());
    }
    CHECK(locus.locus_points.size() == locus.lines.size());

    // a smooth conic admits no lines at all
    auto conic = hyp2("x0^2 + x1*x2", 3);
    auto pc = ProjPoint::parse(conic.field, "(0:1:0)");
    CHECK(line_locus(conic, pc).lines.empty());

    // every line of lines_in through P arises from the locus of P
    auto all_lines = lines_in(Q);
    std::set<std::string> through_p;
    for (const auto& l : all_lines)
        if (l.contains(P)) through_p.insert(l.key());
    std::set<std::string> from_locus;
    for (const auto& l : locus.lines) from_locus.insert(l.key());
    CHECK(through_p == from_locus);
}

TEST_CASE("line locus at a singular point") {
    auto X = hyp2("x0*x1", 4); // union of two planes in P^3
    auto P = ProjPoint::parse(X.field, "(0:0:1:0)"); // singular point
    auto locus = line_locus(X, P);
    CHECK(locus.locus_ambient == 2); // directions in P^{N-1}
    for (const auto& l : locus.lines) {
        CHECK(l.contains(P));
        CHECK(restrict_to_subspace(X.F, l).is_zero());
    }
    CHECK(!locus.lines.empty());
}

TEST_CASE("Thas invariant") {
    CHECK(thas_invariant(fixtures::hyperbolic_quadric_f2()) == 1);
    CHECK(thas_invariant(fixtures::extremal_cubic()) == 1); // <= floor(3/2)
    // pointless binary form: sentinel -1
    auto pointless = Hypersurface::make(
        parse_homogeneous_poly(FieldSpec::prime(2), "x0^2 + x0*x1 + x1^2", 2));
    CHECK(thas_invariant(pointless) == -1);
    // a hypersurface with a hyperplane factor contains a solid in P^4
    CHECK(thas_invariant(hyp2("x0*x1^2 + x0*x2^2", 5)) == 3);
    CHECK(thas_invariant(fixtures::parabolic_quadric_f2()) == 1);
}

TEST_CASE("lines_in") {
    CHECK(lines_in(fixtures::hyperbolic_quadric_f2()).size() == 6); // two rulings of 3
    CHECK(lines_in(hyp2("x0^2 + x1*x2", 3)).empty());
    auto fermat2 = hyp2("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", 5);
    CHECK(!lines_in(fermat2).empty());
    // every reported line restricts to zero
    for (const auto& l : lines_in(fixtures::hyperbolic_quadric_f2()))
        CHECK(restrict_to_subspace(fixtures::hyperbolic_quadric_f2().F, l).is_zero());
}

TEST_CASE("conic classification") {
    auto f2 = FieldSpec::prime(2);
    auto mk = [&](const char* t) { return parse_homogeneous_poly(f2, t, 3); };
    CHECK(classify_conic(mk("x0^2 + x1*x2")) == ConicClass::smooth_conic);
    CHECK(classify_conic(mk("x0^2 + x0*x1 + x1^2")) == ConicClass::pointless_irreducible);
    CHECK(classify_conic(mk("x0*x1")) == ConicClass::rational_line_pair);
    CHECK(classify_conic(mk("x0^2")) == ConicClass::double_line);

    auto f3 = FieldSpec::prime(3);
    CHECK(classify_conic(parse_homogeneous_poly(f3, "x0^2 + x1^2", 3)) ==
          ConicClass::pointless_irreducible); // conjugate pair over F_9
    CHECK(classify_conic(parse_homogeneous_poly(f3, "x0^2 + x1^2 + x2^2", 3)) ==
          ConicClass::smooth_conic);

    // invariance under random projectivities
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<uint32_t> pick(0, 1);
    const char* reps[] = {"x0^2 + x1*x2", "x0^2 + x0*x1 + x1^2", "x0*x1", "x0^2"};
    for (const char* rep : reps) {
        auto F = mk(rep);
        auto cls = classify_conic(F);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<uint32_t> mat(9);
            Projectivity T;
            while (true) {
                for (auto& v : mat) v = pick(rng);
                try {
                    T = Projectivity::from_matrix(f2, 2, mat);
                    break;
                } catch (const PreconditionError&) {
                }
            }
            CHECK(classify_conic(apply_projectivity(F, T)) == cls);
        }
    }
    CHECK_THROWS_AS(classify_conic(mk("x0^3")), PreconditionError);
}

TEST_CASE("pencil statistics on a quadric threefold") {
    // X = V(x0*x1 + x2*x3) in P^4 contains the line {x1=x3=x4=0}
    auto X = hyp2("x0*x1 + x2*x3", 5);
    auto l = line_through(ProjPoint::parse(X.field, "(1:0:0:0:0)"),
                          ProjPoint::parse(X.field, "(0:0:1:0:0)"));
    auto stats = pencil_stats(X, l);
    const uint64_t q = 2;
    CHECK(planes_containing(l).size() == q * q + q + 1);
    CHECK(stats.delta + stats.sigma_size <= q * q + q + 1);
    // omega is a subset of sigma and delta planes are excluded from both
    CHECK(stats.omega_size <= stats.sigma_size);
    for (const auto& dp : stats.delta_planes) {
        for (const auto& sp : stats.sigma_planes) CHECK(!(dp == sp));
    }
    // quadric sections through l always split off l, so sigma planes carry
    // exactly two distinct rational lines
    for (const auto& sp : stats.sigma_planes) {
        auto split = linear_factor_split(restrict_to_subspace(X.F, sp));
        CHECK(split.factors.size() == 2);
    }
    // delta_x matches the line loci
    for (const auto& x : l.rational_points())
        CHECK(stats.delta_x.at(x.str()) == static_cast<int>(line_locus(X, x).lines.size()));

    CHECK_THROWS_AS(pencil_stats(X, line_through(ProjPoint::parse(X.field, "(1:0:0:0:0)"),
                                                 ProjPoint::parse(X.field, "(0:1:0:0:0)"))),
                    PreconditionError); // line not inside X
}

TEST_CASE("pencil statistics with a plane inside X") {
    // X = V(x0*x1) contains the plane {x0=0, x1=0}-side solids; take l inside
    auto X = hyp2("x0*x1", 5);
    auto l = line_through(ProjPoint::parse(X.field, "(0:0:1:0:0)"),
                          ProjPoint::parse(X.field, "(0:0:0:1:0)"));
    auto stats = pencil_stats(X, l);
    CHECK(stats.delta >= 1);
    for (const auto& dp : stats.delta_planes) {
        CHECK(restrict_to_subspace(X.F, dp).is_zero());
        bool in_omega = false;
        for (const auto& [pt, planes] : stats.omega_by_point)
            for (const auto& op : planes)
                if (op == dp) in_omega = true;
        CHECK(!in_omega);
    }
}

TEST_CASE("cone sections of nonsingular hypersurfaces have nonsingular bases") {
    // property check on random nonsingular cubic threefolds over F_2
    std::mt19937_64 rng(67);
    auto f2 = FieldSpec::prime(2);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 8; ++trial) {
        auto F = oracle::random_form(rng, f2, 5, 3);
        if (F.is_zero() || F.degree() != 3) continue;
        auto X = Hypersurface::make(F);
        if (!singular_points_over(X, 1).empty()) continue;
        if (!is_nonsingular(X)) continue;
        for (const auto& P : rational_points(X)) {
            auto rep = tangent_section(X, P);
            if (rep.is_cone) {
                CHECK(cone_base_nonsingular(rep));
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}
