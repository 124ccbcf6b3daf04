#pragma once

// Shared concrete instances used across the test suites.

#include "hkbound/geometry.hpp"
#include "hkbound/poly.hpp"

namespace hk::fixtures {

// 16-term cubic threefold over F_2 with 27 rational points.
inline const char* kExtremalCubicText =
    "x0^2*x1 + x0*x1^2 + x0*x1*x2 + x0*x2^2 + x1*x2^2 + x2^3 + x0*x2*x3 + x2^2*x3 + "
    "x0^2*x4 + x0*x1*x4 + x1*x2*x4 + x0*x3*x4 + x2*x3*x4 + x3^2*x4 + x2*x4^2 + x3*x4^2";

inline MultiPoly extremal_cubic_poly() {
    return parse_homogeneous_poly(FieldSpec::prime(2), kExtremalCubicText, 5);
}

inline Hypersurface extremal_cubic() { return Hypersurface::make(extremal_cubic_poly()); }

// Parabolic quadric threefold over F_2.
inline Hypersurface parabolic_quadric_f2() {
    return Hypersurface::make(
        parse_homogeneous_poly(FieldSpec::prime(2), "x0^2 + x1*x2 + x3*x4", 5));
}

// Hermitian (Fermat) cubic threefold over F_4.
inline Hypersurface hermitian_cubic_f4() {
    return Hypersurface::make(parse_homogeneous_poly(
        FieldSpec::prime_power(2, 2), "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", 5));
}

// Hyperbolic quadric surface in P^3 over F_2 (contains 6 lines).
inline Hypersurface hyperbolic_quadric_f2() {
    return Hypersurface::make(parse_homogeneous_poly(FieldSpec::prime(2), "x0*x1 + x2*x3", 4));
}

} // namespace hk::fixtures
