#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "hkbound/bounds.hpp"
#include "oracles.hpp"

using namespace hk;

TEST_CASE("theta values") {
    CHECK(theta(3, 3, 2) == 27);
    CHECK(theta(3, 4, 4) == 245);
    CHECK(theta(3, 2, 2) == 15);
    CHECK(theta(3, 3, 4) == 165);
    CHECK_THROWS_AS(theta(4, 3, 2), PreconditionError); // even n rejected
    CHECK_THROWS_AS(theta(1, 3, 2), PreconditionError);
}

TEST_CASE("k-bound values") {
    CHECK(k_bound(3, 3, 2, 1) == 31); // 2*2*7 + 3
    // k = (n-1)/2 substitution for n = 3
    for (int64_t d : {2, 3, 4})
        for (uint64_t q : {2ull, 3ull, 4ull})
            CHECK(k_bound(3, d, q, 1) ==
                  BigInt(d - 1) * q * proj_count_big(2, q) + q + 1);
    // k = 0
    CHECK(k_bound(3, 3, 2, 0) == BigInt(2) * proj_count_big(3, 2) + 1);
    CHECK_THROWS_AS(k_bound(3, 3, 2, 3), PreconditionError);
    CHECK_THROWS_AS(k_bound(3, 3, 2, -1), PreconditionError);
}

TEST_CASE("curve bounds") {
    auto b32 = curve_bound(3, 2);
    CHECK(b32.generic == 5);
    CHECK(!b32.exceptional);
    auto b44 = curve_bound(4, 4);
    CHECK(b44.generic == 13);
    REQUIRE(b44.exceptional);
    CHECK(*b44.exceptional == 14);
    CHECK(curve_bound(2, 7).generic == 8); // q+1 on a smooth conic
}

TEST_CASE("bound report on the extremal cubic") {
    auto rep = bound_report(fixtures::extremal_cubic());
    CHECK(rep.points == 27);
    REQUIRE(rep.theta_value);
    CHECK(*rep.theta_value == 27);
    CHECK(rep.theta_equality);
    CHECK(rep.within_theta);
    CHECK(rep.within_k_bound);
    CHECK(rep.k_x == 1);
    REQUIRE(rep.witness);
    CHECK(rep.witness->base_points == 5); // (d-1)q+1
    CHECK(!rep.contradiction);
}

TEST_CASE("bound report on the parabolic quadric") {
    auto rep = bound_report(fixtures::parabolic_quadric_f2());
    CHECK(rep.points == 15);
    CHECK(*rep.theta_value == 15);
    CHECK(rep.theta_equality);
    REQUIRE(rep.witness);
    CHECK(rep.witness->base_points == 3); // smooth conic, (d-1)q+1
    CHECK(!rep.contradiction);
}

TEST_CASE("bound report on the Hermitian cubic") {
    auto rep = bound_report(fixtures::hermitian_cubic_f4());
    CHECK(rep.points == 165);
    CHECK(*rep.theta_value == 165);
    CHECK(rep.theta_equality);
    CHECK(!rep.contradiction);
}

TEST_CASE("k-bound holds for singular hypersurfaces too") {
    std::mt19937_64 rng(71);
    auto f2 = FieldSpec::prime(2);
    int tested = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto F = oracle::random_form(rng, f2, 5, 3);
        if (F.is_zero() || F.degree() != 3) continue;
        auto rep = bound_report(Hypersurface::make(F));
        CHECK(rep.within_k_bound);
        ++tested;
    }
    CHECK(tested >= 40);
}

TEST_CASE("theta is not derived from the k-bound") {
    // theta comes from its own formula; spot check the two do differ in general
    CHECK(theta(3, 3, 2) != k_bound(3, 3, 2, 1));
}

TEST_CASE("even-dimension reports skip theta") {
    auto X = Hypersurface::make(
        parse_homogeneous_poly(FieldSpec::prime(2), "x0^2 + x1*x2 + x3^2", 4));
    auto rep = bound_report(X); // surface in P^3: n = 2
    CHECK(!rep.theta_value);
    CHECK(rep.within_k_bound);
}
