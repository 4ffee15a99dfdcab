// Command-line front end: reconstructs and verifies the touching-conic
// computations for a 13-nodal quartic, emitting deterministic JSON or text
// reports.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tconic/data_io.hpp"
#include "tconic/report.hpp"
#include "tconic/square_locus.hpp"
#include "tconic/lattice.hpp"

using namespace tconic;
using report::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCertification = 3;
constexpr int kExitCensus = 4;

struct CommonOpts {
    std::string spec_file;
    std::string plane_str;
    std::uint64_t seed = 0;
    bool use_seed = false;
    bool node_plane = false;
    int precision = 128;
    bool as_json = true;
    std::string out_file;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

quartic13::QuarticSpec load_spec(const CommonOpts& o, std::string* digest_src) {
    std::string content = o.spec_file.empty() ? report::embedded_diagonal_spec()
                                              : slurp(o.spec_file);
    *digest_src = content;
    std::istringstream is(content);
    auto vals = load_rationals(is);
    return quartic13::QuarticSpec::from_values(vals);
}

planeq::PlaneSpec resolve_plane(const CommonOpts& o, const quartic13::QuarticSurface& S,
                                planeq::PlaneQuartic* sec) {
    if (!o.plane_str.empty()) {
        std::istringstream is(o.plane_str);
        auto vals = load_rationals(is);
        if (vals.size() != 4) throw std::invalid_argument("plane needs 4 rationals");
        planeq::PlaneSpec p = planeq::PlaneSpec::from_coeffs({vals[0], vals[1], vals[2], vals[3]});
        if (sec) *sec = planeq::section(S, p);
        return p;
    }
    if (o.node_plane) return planeq::random_node_plane(S, o.seed, sec);
    return planeq::random_smooth_plane(S, o.seed, sec);
}

int emit(const CommonOpts& o, const json& j) {
    std::string text = o.as_json ? j.dump(2) + "\n" : report::render_text(j);
    if (o.out_file.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(o.out_file);
        f << text;
    }
    return kExitOk;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_plane) {
    cmd->add_option("--spec", o.spec_file, "quartic spec file (9 rationals)");
    if (with_plane) {
        cmd->add_option("--plane", o.plane_str, "plane coefficients \"y0 y1 y2 y3\"");
        cmd->add_option("--seed", o.seed, "seed for a random certified plane")
            ->each([&o](const std::string&) { o.use_seed = true; });
        cmd->add_flag("--node-plane", o.node_plane, "draw a plane through the real node");
    }
    cmd->add_option("--precision", o.precision, "working precision in bits")
        ->check(CLI::IsMember({64, 128, 256}));
    auto* jf = cmd->add_flag("--json", "emit JSON (default)");
    auto* tf = cmd->add_flag("--text", "emit plain text");
    cmd->callback([&o, jf, tf] {
        if (tf->count() && !jf->count()) o.as_json = false;
    });
    cmd->add_option("--out", o.out_file, "write the report to a file");
}

int cmd_verify_gb(const CommonOpts& o, const std::string& gb_file, bool regenerate) {
    std::string content = gb_file.empty() ? report::embedded_square_basis() : slurp(gb_file);
    std::istringstream is(content);
    auto basis = load_poly_lines(is, square_param_vars());
    json j = report::header("verify-gb", report::digest(content), o.precision);
    j["basis_size"] = basis.size();
    bool pass = basis.size() == 27;
    if (!pass) j["error"] = "expected 27 polynomials";

    std::pair<int, int> bad{-1, -1};
    if (pass && !groebner::verify_groebner(basis, &bad)) {
        pass = false;
        j["failing_s_pair"] = {bad.first, bad.second};
    }
    j["s_pairs_reduce"] = pass;

    if (pass) {
        // mutual ideal membership with the graph generators of the squaring map
        auto gens = square_param_gens();
        bool graph_in_basis = true;
        for (auto& g : gens)
            if (!groebner::in_ideal(g, basis)) graph_in_basis = false;
        auto gb = groebner::buchberger(gens);
        bool basis_in_graph = true;
        for (auto& b : basis)
            if (!groebner::in_ideal(b, gb.gens)) basis_in_graph = false;
        j["generators_reduce_to_zero"] = graph_in_basis;
        j["basis_reduces_to_zero"] = basis_in_graph;
        pass = pass && graph_in_basis && basis_in_graph;

        // the seven eliminants regenerate up to scalar and sign
        auto elim = groebner::elimination_ideal(gb, {0, 1, 2});
        bool elim_ok = elim.size() == 7;
        for (auto& e : elim) {
            bool found = false;
            for (size_t k = 20; k < basis.size(); ++k)
                if (proportional(e, basis[k])) found = true;
            if (!found) elim_ok = false;
        }
        j["eliminants_regenerate"] = elim_ok;
        j["eliminant_count"] = elim.size();
        pass = pass && elim_ok;
        if (regenerate) {
            json rg = json::array();
            for (auto& g : gb.gens) rg.push_back(to_string(g));
            j["regenerated_basis"] = rg;
        }
    }
    j["pass"] = pass;
    emit(o, j);
    return pass ? kExitOk : 1;
}

int cmd_quartic(const CommonOpts& o) {
    std::string src;
    auto spec = load_spec(o, &src);
    auto S = quartic13::build(spec);
    auto rep = quartic13::validate(spec);
    json j = report::header("quartic", report::digest(src), o.precision);
    j["validation"] = report::validation_json(rep);
    if (rep.ok()) {
        auto N = quartic13::nodes(S);
        j["nodes"] = report::nodes_json(N);
        j["hessian_rank_at_real_node"] = quartic13::hessian_rank_at(S.F, N.real_node);
        j["branch_sextic"] = report::sextic_json(quartic13::branch_sextic(S));
    }
    emit(o, j);
    return rep.ok() ? kExitOk : 1;
}

int cmd_section(const CommonOpts& o) {
    std::string src;
    auto spec = load_spec(o, &src);
    auto S = quartic13::build(spec);
    planeq::PlaneQuartic pq;
    resolve_plane(o, S, &pq);
    json j = report::header("section", report::digest(src), o.precision);
    j["section"] = report::section_json(pq);
    emit(o, j);
    return kExitOk;
}

int cmd_bitangents(const CommonOpts& o) {
    std::string src;
    auto spec = load_spec(o, &src);
    auto S = quartic13::build(spec);
    planeq::PlaneQuartic pq;
    resolve_plane(o, S, &pq);
    json j = report::header("bitangents", report::digest(src), o.precision);
    j["section"] = report::section_json(pq);
    auto bts = planeq::bitangents(pq, o.precision);
    j["result"] = report::bitangents_json(bts);
    int expected = pq.kind == planeq::SectionKind::Smooth ? 28 : 22;
    bool count_ok = int(bts.list.size()) == expected;
    j["count_matches"] = count_ok;
    emit(o, j);
    return count_ok ? kExitOk : kExitCensus;
}

int cmd_families(const CommonOpts& o) {
    std::string src;
    auto spec = load_spec(o, &src);
    auto S = quartic13::build(spec);
    planeq::PlaneQuartic pq;
    resolve_plane(o, S, &pq);
    json j = report::header("families", report::digest(src), o.precision);
    j["section"] = report::section_json(pq);
    auto bts = planeq::bitangents(pq, o.precision);
    auto census = planeq::enumerate_families(pq, bts, o.precision);
    j["result"] = report::families_json(census, pq);
    bool ok = pq.kind == planeq::SectionKind::Smooth
                  ? census.families.size() == 63
                  : census.families.size() == 46 && census.intersecting_family_pairs == 15;
    j["census_matches"] = ok;
    emit(o, j);
    return ok ? kExitOk : kExitCensus;
}

int cmd_components(const CommonOpts& o) {
    std::string src;
    auto spec = load_spec(o, &src);
    auto S = quartic13::build(spec);
    planeq::PlaneQuartic pq;
    resolve_plane(o, S, &pq);
    json j = report::header("components", report::digest(src), o.precision);
    j["section"] = report::section_json(pq);
    auto bts = planeq::bitangents(pq, o.precision);
    auto census = planeq::enumerate_families(pq, bts, o.precision);
    auto cc = bisec::component_census(S, pq, bts, census, o.precision);
    j["result"] = report::components_json(cc);
    // cross-check against the lattice-level census
    auto lat = lattice::yf2_component_census();
    bool cross = lat.total_families() == 63 && lat.total_pairs() == 378 &&
                 cc.aggregation_ok && cc.histogram[0] == 8 && cc.histogram[1] == 8 &&
                 cc.histogram[2] == 8;
    j["lattice_cross_check"] = cross;
    emit(o, j);
    return cross ? kExitOk : kExitCensus;
}

int cmd_orbits(const CommonOpts& o) {
    json j = report::header("orbits", report::digest("lattice"), o.precision);
    j["result"] = report::orbit_json();
    emit(o, j);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"touching conics of a 13-nodal quartic surface"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string gb_file;
    bool regenerate = false;

    auto* vgb = app.add_subcommand("verify-gb", "verify the perfect-square locus basis");
    add_common(vgb, o, false);
    vgb->add_option("--file", gb_file, "external basis file (default: bundled)");
    vgb->add_flag("--regenerate", regenerate, "recompute the basis and include it");

    auto* qc = app.add_subcommand("quartic", "build and validate the quartic family");
    add_common(qc, o, false);
    auto* sc = app.add_subcommand("section", "classify a plane section");
    add_common(sc, o, true);
    auto* bc = app.add_subcommand("bitangents", "certified bitangents of a section");
    add_common(bc, o, true);
    auto* fc = app.add_subcommand("families", "touching-conic families of a section");
    add_common(fc, o, true);
    auto* cc = app.add_subcommand("components", "full component pipeline for a section");
    add_common(cc, o, true);
    auto* oc = app.add_subcommand("orbits", "lattice orbit and component censuses");
    add_common(oc, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (vgb->parsed()) return cmd_verify_gb(o, gb_file, regenerate);
        if (qc->parsed()) return cmd_quartic(o);
        if (sc->parsed()) return cmd_section(o);
        if (bc->parsed()) return cmd_bitangents(o);
        if (fc->parsed()) return cmd_families(o);
        if (cc->parsed()) return cmd_components(o);
        if (oc->parsed()) return cmd_orbits(o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::domain_error& e) {
        std::cerr << "certification error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
