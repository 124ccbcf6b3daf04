#include "hkbound/jsonio.hpp"

#include <sstream>

#include <json.hpp>

namespace hk {

namespace {

std::string quoted(const std::string& s) {
    return nlohmann::json(s).dump();
}

std::string bigint_str(const BigInt& v) { return v.str(); }

} // namespace

std::string subspace_rows_json(const LinearSubspace& s) {
    std::string out = "[";
    for (size_t r = 0; r < s.rows.size(); ++r) {
        if (r) out += ",";
        out += "[";
        for (size_t c = 0; c < s.rows[r].size(); ++c) {
            if (c) out += ",";
            out += quoted(s.field->literal(s.rows[r][c]));
        }
        out += "]";
    }
    return out + "]";
}

std::string to_json(const BoundReport& rep) {
    std::ostringstream o;
    o << "{\"n\":" << rep.n << ",\"d\":" << rep.d << ",\"q\":" << rep.q
      << ",\"points\":" << rep.points << ",\"k_x\":" << rep.k_x;
    if (rep.theta_value) o << ",\"theta\":" << bigint_str(*rep.theta_value);
    o << ",\"k_bound\":" << bigint_str(rep.k_bound_value)
      << ",\"elementary_bound\":" << bigint_str(rep.elementary_bound)
      << ",\"within_theta\":" << (rep.within_theta ? "true" : "false")
      << ",\"theta_equality\":" << (rep.theta_equality ? "true" : "false")
      << ",\"within_k_bound\":" << (rep.within_k_bound ? "true" : "false");
    if (rep.witness) {
        o << ",\"witness\":{\"point\":" << quoted(rep.witness->point.str())
          << ",\"base_points\":" << rep.witness->base_points
          << ",\"base_poly\":" << quoted(format_poly(rep.witness->base_poly)) << "}";
    }
    o << ",\"contradiction\":" << (rep.contradiction ? "true" : "false") << "}";
    return o.str();
}

std::string to_json(const TangentSectionReport& rep) {
    std::ostringstream o;
    o << "{\"point\":" << quoted(rep.point.str())
      << ",\"tangent_rows\":" << subspace_rows_json(rep.tangent)
      << ",\"section\":" << quoted(format_poly(rep.section)) << ",\"components\":[";
    for (size_t j = 0; j < rep.components.size(); ++j) {
        if (j) o << ",";
        o << quoted(format_poly(rep.components[j]));
    }
    o << "],\"min_degree\":" << rep.min_degree
      << ",\"tangent_cone\":" << quoted(format_poly(rep.tangent_cone))
      << ",\"is_cone\":" << (rep.is_cone ? "true" : "false");
    if (rep.base) o << ",\"cone_base\":" << quoted(format_poly(rep.base->F));
    o << "}";
    return o.str();
}

std::string to_json(const PencilStats& stats) {
    std::ostringstream o;
    o << "{\"line_rows\":" << subspace_rows_json(stats.line) << ",\"d\":" << stats.degree
      << ",\"q\":" << stats.q << ",\"delta\":" << stats.delta << ",\"omega_by_point\":{";
    bool first = true;
    for (const auto& [pt, planes] : stats.omega_by_point) {
        if (!first) o << ",";
        first = false;
        o << quoted(pt) << ":" << planes.size();
    }
    o << "},\"omega_size\":" << stats.omega_size << ",\"sigma_size\":" << stats.sigma_size
      << ",\"delta_x\":{";
    first = true;
    for (const auto& [pt, count] : stats.delta_x) {
        if (!first) o << ",";
        first = false;
        o << quoted(pt) << ":" << count;
    }
    o << "},\"designated_point\":" << quoted(stats.designated_point.str())
      << ",\"epsilon_p\":" << stats.epsilon_p << "}";
    return o.str();
}

FamilySpec parse_family_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad family JSON: ") + e.what());
    }
    for (const char* key : {"field", "ambient", "degree", "fixed", "slots"})
        if (!j.contains(key)) throw ParseError(std::string("family JSON missing key: ") + key);
    const FieldPtr field = FieldSpec::parse_name(j["field"].get<std::string>());
    const int ambient = j["ambient"].get<int>();
    const int degree = j["degree"].get<int>();
    MultiPoly fixed = parse_poly(field, j["fixed"].get<std::string>(), ambient + 1);
    std::vector<Monomial> slots;
    for (const auto& s : j["slots"]) {
        MultiPoly m = parse_poly(field, s.get<std::string>(), ambient + 1);
        if (m.terms().size() != 1 || m.terms()[0].coeff != 1)
            throw ParseError("family slot must be a plain monomial: " + s.get<std::string>());
        slots.push_back(m.terms()[0].mono);
    }
    return FamilySpec::make(field, ambient, degree, std::move(fixed), std::move(slots));
}

std::string family_to_json(const FamilySpec& fam) { return fam.canonical_json(); }

AnalyzeOutput analyze(const Hypersurface& X) {
    AnalyzeOutput out{X, bound_report(X), false, {}, {}, -1, {}};
    out.nonsingular = is_nonsingular(X);
    for (const auto& P : rational_points(X)) {
        try {
            out.sections.push_back(tangent_section(X, P));
        } catch (const PreconditionError&) {
            out.singular_rational_points.push_back(P);
        }
    }
    out.thas = out.report.k_x;
    out.lines = lines_in(X);
    return out;
}

std::string to_json(const AnalyzeOutput& out) {
    std::ostringstream o;
    o << "{\"input\":{\"poly\":" << quoted(format_poly(out.X.F))
      << ",\"field\":" << quoted(out.X.field->name()) << ",\"n\":" << out.X.dim
      << ",\"d\":" << out.X.degree << "},\"nonsingular\":" << (out.nonsingular ? "true" : "false")
      << ",\"bound_report\":" << to_json(out.report) << ",\"tangent_survey\":[";
    bool first = true;
    for (const auto& ts : out.sections) {
        if (!first) o << ",";
        first = false;
        o << "{\"point\":" << quoted(ts.point.str())
          << ",\"is_cone\":" << (ts.is_cone ? "true" : "false");
        if (ts.base) o << ",\"base_points\":" << point_count(*ts.base);
        o << "}";
    }
    o << "],\"singular_rational_points\":[";
    first = true;
    for (const auto& p : out.singular_rational_points) {
        if (!first) o << ",";
        first = false;
        o << quoted(p.str());
    }
    o << "],\"thas\":" << out.thas << ",\"lines\":[";
    first = true;
    for (const auto& l : out.lines) {
        if (!first) o << ",";
        first = false;
        o << subspace_rows_json(l);
    }
    o << "]}";
    return o.str();
}

std::string analyze_text(const AnalyzeOutput& out) {
    std::ostringstream o;
    o << "hypersurface: n=" << out.X.dim << " d=" << out.X.degree << " q=" << out.X.field->order()
      << "\n";
    o << "points: " << out.report.points << "\n";
    o << "nonsingular: " << (out.nonsingular ? "yes" : "no") << "\n";
    o << "thas_invariant: " << out.thas << "\n";
    if (out.report.theta_value)
        o << "theta: " << out.report.theta_value->str()
          << (out.report.theta_equality ? " (equality)" : "") << "\n";
    o << "k_bound: " << out.report.k_bound_value.str() << "\n";
    int cones = 0;
    for (const auto& ts : out.sections) cones += ts.is_cone ? 1 : 0;
    o << "cone_points: " << cones << "/" << out.sections.size() << "\n";
    o << "lines: " << out.lines.size() << "\n";
    if (out.report.witness)
        o << "witness: " << out.report.witness->point.str() << " base_points "
          << out.report.witness->base_points << "\n";
    if (out.report.contradiction) o << "CONTRADICTION FLAG SET\n";
    return o.str();
}

} // namespace hk
