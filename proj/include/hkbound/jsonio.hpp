#pragma once

#include <string>

#include "hkbound/bounds.hpp"
#include "hkbound/search.hpp"

namespace hk {

// Ordered-key JSON strings for the documented record formats. Every
// serializer here is deterministic: identical values give identical bytes.
std::string to_json(const BoundReport& rep);
std::string to_json(const TangentSectionReport& rep);
std::string to_json(const PencilStats& stats);
std::string subspace_rows_json(const LinearSubspace& s);

// Family files: {"field":"2","ambient":4,"degree":3,"fixed":"...","slots":[...]}
FamilySpec parse_family_json(const std::string& text);
std::string family_to_json(const FamilySpec& fam);

// The analyze output bundles the bound report with the per-point tangent
// survey, Thas invariant and lines.
struct AnalyzeOutput {
    Hypersurface X;
    BoundReport report;
    bool nonsingular = false;
    std::vector<TangentSectionReport> sections; // nonsingular rational points
    std::vector<ProjPoint> singular_rational_points;
    int thas = -1;
    std::vector<LinearSubspace> lines;
};
AnalyzeOutput analyze(const Hypersurface& X);
std::string to_json(const AnalyzeOutput& out);
std::string analyze_text(const AnalyzeOutput& out);

} // namespace hk
