#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hkbound/bitslice.hpp"
#include "hkbound/jsonio.hpp"

namespace {

// Exit code contract: 0 ok, 2 parse/usage, 3 precondition, 4 contradiction
// flag, 5 quarantine nonempty.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitContradiction = 4;
constexpr int kExitQuarantine = 5;

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw hk::PreconditionError("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(out_path, std::ios::trunc);
        if (!f) throw hk::Error("cannot open output file: " + out_path);
        f << text;
        if (text.empty() || text.back() != '\n') f << "\n";
    }
}

std::pair<int, int> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

bool is_prime_power(uint64_t q) {
    if (q < 2) return false;
    uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) return true; // q itself prime
    while (q > 1) {
        if (q % p != 0) return false;
        q /= p;
    }
    return true;
}

std::pair<uint32_t, uint32_t> parse_shard(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) throw hk::ParseError("shard must look like i/S");
    uint32_t i = static_cast<uint32_t>(std::stoul(text.substr(0, slash)));
    uint32_t s = static_cast<uint32_t>(std::stoul(text.substr(slash + 1)));
    if (s == 0 || i >= s) throw hk::ParseError("shard index must satisfy 0 <= i < S");
    return {i, s};
}

int cmd_analyze(const std::string& poly_path, const std::string& field_name, int ambient,
                bool require_nonsingular, const std::string& format, const std::string& out_path,
                const std::string& sections_path) {
    const hk::FieldPtr field = hk::FieldSpec::parse_name(field_name);
    const hk::MultiPoly F =
        hk::parse_homogeneous_poly(field, slurp(poly_path), ambient < 0 ? -1 : ambient + 1);
    const hk::Hypersurface X = hk::Hypersurface::make(F);
    hk::AnalyzeOutput out = hk::analyze(X);
    if (require_nonsingular && !out.nonsingular) {
        std::cerr << "input hypersurface is singular\n";
        return kExitPrecondition;
    }
    if (!sections_path.empty()) {
        // one full tangent-section report per line
        std::ofstream sf(sections_path, std::ios::trunc);
        if (!sf) throw hk::Error("cannot open sections file: " + sections_path);
        for (const auto& ts : out.sections) sf << hk::to_json(ts) << "\n";
    }
    emit(format == "text" ? hk::analyze_text(out) : hk::to_json(out), out_path);
    return out.report.contradiction ? kExitContradiction : kExitOk;
}

int cmd_theta(int n, int64_t d, uint64_t q) {
    std::cout << hk::theta(n, d, q).str() << "\n";
    return kExitOk;
}

int cmd_table(const std::string& n_range, const std::string& d_range, const std::string& q_range,
              const std::string& out_path) {
    auto [n_lo, n_hi] = parse_range(n_range);
    auto [d_lo, d_hi] = parse_range(d_range);
    auto [q_lo, q_hi] = parse_range(q_range);
    std::ostringstream o;
    o << "n,d,q,theta,k_bound_half,k_bound_elementary\n";
    for (int n = n_lo; n <= n_hi; ++n) {
        if (n < 3 || n % 2 == 0) throw hk::PreconditionError("table requires odd n >= 3");
        for (int d = d_lo; d <= d_hi; ++d)
            for (int q = q_lo; q <= q_hi; ++q) {
                if (!is_prime_power(static_cast<uint64_t>(q))) continue;
                o << n << "," << d << "," << q << ","
                  << hk::theta(n, d, static_cast<uint64_t>(q)).str() << ","
                  << hk::k_bound(n, d, static_cast<uint64_t>(q), (n - 1) / 2).str() << ","
                  << hk::k_bound(n, d, static_cast<uint64_t>(q), n - 1).str() << "\n";
            }
    }
    emit(o.str(), out_path);
    return kExitOk;
}

int cmd_search(const std::string& family_path, int64_t min_points, const std::string& shard,
               int threads, const std::string& checkpoint, const std::string& out_path,
               uint64_t stop_after) {
    const hk::FamilySpec fam = hk::parse_family_json(slurp(family_path));
    hk::SearchOptions opts;
    opts.min_points = min_points;
    std::tie(opts.shard, opts.shard_count) = parse_shard(shard);
    opts.threads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    opts.checkpoint_path = checkpoint;
    opts.stop_after = stop_after;
    const std::string out = out_path.empty() ? "search_results.jsonl" : out_path;
    hk::SearchOutcome res = hk::run_search(fam, opts, out);
    const auto& c = res.counters;
    std::cout << "total=" << c.total << " rejected_stage1_count=" << c.rejected_stage1_count
              << " rejected_rational_singular=" << c.rejected_rational_singular
              << " rejected_groebner_singular=" << c.rejected_groebner_singular
              << " quarantine=" << c.quarantine << " extremal=" << c.extremal
              << " exceptional=" << c.exceptional
              << (res.completed ? "" : " (stopped early)") << "\n";
    if (c.quarantine > 0) return kExitQuarantine;
    return kExitOk;
}

int cmd_pencil(const std::string& poly_path, const std::string& field_name,
               const std::vector<std::string>& line_points, const std::string& out_path) {
    const hk::FieldPtr field = hk::FieldSpec::parse_name(field_name);
    if (line_points.size() != 2) throw hk::ParseError("--line needs exactly two points");
    const hk::ProjPoint P = hk::ProjPoint::parse(field, line_points[0]);
    const hk::ProjPoint Q = hk::ProjPoint::parse(field, line_points[1]);
    // the line pins the ambient dimension
    const hk::MultiPoly F = hk::parse_homogeneous_poly(field, slurp(poly_path), P.ambient + 1);
    const hk::Hypersurface X = hk::Hypersurface::make(F);
    const hk::LinearSubspace l = hk::line_through(P, Q);
    hk::PencilStats stats = hk::pencil_stats(X, l);
    std::string json = hk::to_json(stats);
    // Claim-style inequality flags for nonsingular threefolds with d <= q.
    if (X.degree <= static_cast<int>(X.field->order()) && hk::is_nonsingular(X)) {
        const uint64_t q = X.field->order();
        const bool omega_ok = stats.omega_size <= q * q - 1;
        const bool sigma_ok = stats.sigma_size <= q * q + q - 2;
        json.pop_back(); // strip closing brace
        json += std::string(",\"claim2\":{\"applicable\":true,\"omega_ok\":") +
                (omega_ok ? "true" : "false") + ",\"sigma_ok\":" + (sigma_ok ? "true" : "false") +
                "}}";
    }
    emit(json, out_path);
    return kExitOk;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out_path) {
    hk::merge_results(inputs, out_path.empty() ? "merged_results.jsonl" : out_path);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact projective hypersurface point counts, Homma-Kim bounds and searches over finite fields"};
    app.require_subcommand(1);

    std::string poly_path, field_name = "2", format = "json", out_path;
    bool require_nonsingular = false;
    int ambient = -1;
    auto* analyze = app.add_subcommand("analyze", "full report for one hypersurface");
    analyze->add_option("poly", poly_path, "polynomial file")->required();
    analyze->add_option("--field", field_name, "field, e.g. 2 or 2^2");
    analyze->add_option("--ambient", ambient, "ambient projective dimension (default: inferred)");
    analyze->add_flag("--require-nonsingular", require_nonsingular);
    analyze->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--out", out_path);
    std::string sections_path;
    analyze->add_option("--sections", sections_path,
                        "write one tangent-section report JSON per line");

    int theta_n = 3;
    int64_t theta_d = 2;
    uint64_t theta_q = 2;
    auto* theta = app.add_subcommand("theta", "theta_n^{d,q}");
    theta->add_option("n", theta_n)->required();
    theta->add_option("d", theta_d)->required();
    theta->add_option("q", theta_q)->required();

    std::string n_range = "3", d_range = "2..5", q_range = "2..4";
    auto* table = app.add_subcommand("table", "CSV grid of bounds");
    table->add_option("--n", n_range);
    table->add_option("--d", d_range);
    table->add_option("--q", q_range);
    table->add_option("--out", out_path);

    std::string family_path, shard = "0/1", checkpoint;
    int64_t min_points = 0;
    int threads = 0;
    uint64_t stop_after = 0;
    auto* search = app.add_subcommand("search", "staged exhaustive family search");
    search->add_option("--family", family_path, "family JSON file")->required();
    search->add_option("--min-points", min_points);
    search->add_option("--shard", shard, "i/S residue class");
    search->add_option("--threads", threads, "0 = hardware concurrency");
    search->add_option("--checkpoint", checkpoint);
    search->add_option("--out", out_path);
    search->add_option("--stop-after", stop_after)->group(""); // test hook

    std::vector<std::string> line_points;
    auto* pencil = app.add_subcommand("pencil", "plane pencil statistics through a line");
    pencil->add_option("poly", poly_path)->required();
    pencil->add_option("--field", field_name);
    pencil->add_option("--line", line_points, "two points spanning the line")->expected(2);
    pencil->add_option("--out", out_path);

    std::vector<std::string> merge_inputs;
    auto* merge = app.add_subcommand("merge", "merge completed shard outputs");
    merge->add_option("inputs", merge_inputs)->required();
    merge->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (app.got_subcommand(analyze))
            return cmd_analyze(poly_path, field_name, ambient, require_nonsingular, format,
                               out_path, sections_path);
        if (app.got_subcommand(theta)) return cmd_theta(theta_n, theta_d, theta_q);
        if (app.got_subcommand(table)) return cmd_table(n_range, d_range, q_range, out_path);
        if (app.got_subcommand(search))
            return cmd_search(family_path, min_points, shard, threads, checkpoint, out_path,
                              stop_after);
        if (app.got_subcommand(pencil)) return cmd_pencil(poly_path, field_name, line_points, out_path);
        if (app.got_subcommand(merge)) return cmd_merge(merge_inputs, out_path);
    } catch (const hk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const hk::PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
