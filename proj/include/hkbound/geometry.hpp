#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hkbound/groebner.hpp"
#include "hkbound/poly.hpp"

namespace hk {

// X = V(F) in P^N, N = n+1, deg F = d >= 2.
struct Hypersurface {
    FieldPtr field;
    int ambient = 0; // N
    int dim = 0;     // n = N-1
    int degree = 0;  // d
    MultiPoly F;

    static Hypersurface make(MultiPoly F);
};

// Rational points of X over F_{q^m}.
std::vector<ProjPoint> rational_points(const Hypersurface& X, int m = 1);
// |X(F_{q^m})|; the bitsliced fast path is used when the field is F_2 itself
// and must agree with naive enumeration.
int64_t point_count(const Hypersurface& X, int m = 1);
// Points over F_{q^m} where F and all partials vanish.
std::vector<ProjPoint> singular_points_over(const Hypersurface& X, int m);
// F plus all its partial derivatives (F is always adjoined: when the
// characteristic divides d the Euler relation cannot recover it).
Ideal jacobian_ideal(const Hypersurface& X);
// Exact verdict over the algebraic closure via the Groebner emptiness test.
bool is_nonsingular(const Hypersurface& X, int degree_cap = kDefaultDegreeCap);

// Tangent hyperplane section S_P = T_P X ∩ X at a nonsingular rational
// point, written in coordinates with P = (1:0:...:0) and T_P X = V(x_N).
struct TangentSectionReport {
    ProjPoint point;
    LinearSubspace tangent;   // hyperplane, dim N-1
    Projectivity to_standard; // x_old = mat * x_new
    MultiPoly section;        // N variables x0..x_{N-1}
    std::vector<MultiPoly> components; // x0-decomposition, N-1 variables
    int min_degree = 0;                // minimal j with components[j] != 0
    MultiPoly tangent_cone;            // components[min_degree]
    bool is_cone = false;              // section independent of the vertex variable
    std::optional<Hypersurface> base;  // Y in P^{n-1} when is_cone
};
TangentSectionReport tangent_section(const Hypersurface& X, const ProjPoint& P);
bool cone_base_nonsingular(const TangentSectionReport& report,
                           int degree_cap = kDefaultDegreeCap);

// Scheme of directions through P whose lines lie in X. For nonsingular P the
// generators are the tangent-section components (hyperplane coordinates,
// locus in P^{N-2}); for singular P the decomposition of F itself is used
// (locus in P^{N-1}).
struct LineLocus {
    ProjPoint point;
    std::vector<MultiPoly> generators;
    int locus_ambient = 0;
    std::vector<ProjPoint> locus_points;   // rational points of the locus
    std::vector<LinearSubspace> lines;     // the F_q-lines through P inside X
};
LineLocus line_locus(const Hypersurface& X, const ProjPoint& P);

// Largest k with a rational k-subspace inside X; -1 if X has no rational
// point. Exhaustive over echelon representatives, seeded by the lines found
// through every rational point.
int thas_invariant(const Hypersurface& X);

// All F_q-lines contained in X (canonically ordered, each exactly once).
std::vector<LinearSubspace> lines_in(const Hypersurface& X);

enum class ConicClass {
    smooth_conic,
    pointless_irreducible,
    double_line,
    rational_line_pair,
    conjugate_line_pair,
};
const char* conic_class_name(ConicClass c);
// Classification of a nonzero ternary quadratic form by rational linear
// splitting, smoothness and the split over F_{q^2}.
ConicClass classify_conic(const MultiPoly& F2);

// Statistics of the pencil of planes through a line l inside a threefold in
// P^4: delta counts planes contained in X; a plane belongs to sigma(l) when
// its section of X splits into d distinct rational lines and to
// Omega_l(Q) when those lines are concurrent at Q (necessarily on l);
// delta_x counts the lines of X through each rational point x of l, and
// epsilon_P the lines through the designated P that avoid the delta planes.
struct PencilStats {
    LinearSubspace line;
    int degree = 0;
    uint64_t q = 0;
    int delta = 0;
    std::vector<LinearSubspace> delta_planes;
    std::map<std::string, std::vector<LinearSubspace>> omega_by_point; // key: point string
    size_t omega_size = 0;
    std::vector<LinearSubspace> sigma_planes;
    size_t sigma_size = 0;
    std::map<std::string, int> delta_x; // lines of X through each point of l
    ProjPoint designated_point;
    int epsilon_p = 0;
};
PencilStats pencil_stats(const Hypersurface& X, const LinearSubspace& line);

} // namespace hk
