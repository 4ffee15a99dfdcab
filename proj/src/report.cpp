#include "tconic/report.hpp"

#include <sstream>

#include "tconic/lattice.hpp"

namespace tconic::report {

const char* kToolVersion = "1.0.0";

const std::string& embedded_square_basis() {
    static const std::string s = R"(xi^2 - a
2*xi*eta - b
2*xi*zeta - c + eta^2
xi*b - 2*a*eta
-eta*b - 4*zeta*a + 2*xi*c
xi*d - b*zeta
4*xi*e + eta*d - 2*zeta*c
b*zeta - eta*c + eta^3
4*a*eta^2 - b^2
b*eta^2 - c*b + 2*a*d
2*c*eta^2 - 2*c^2 + b*d + 8*e*a
d*eta^2 - d*c + 2*e*b
2*eta*zeta - d
4*a*eta*c - 4*a*b*zeta - b^2*eta
2*a*eta*d - b^2*zeta
4*a*zeta*d - 2*c*b*zeta + eta*b*d
d*c*eta - 2*zeta*c^2 + zeta*b*d + 8*e*a*zeta
eta*d^2 - 2*zeta*d*c + 4*e*b*zeta
2*eta*e - zeta*d
zeta^2 - e
8*a^2*d - 4*c*b*a + b^3
c*b^2 + 2*a*b*d - 4*a*c^2 + 16*a^2*e
b^2*d + 8*b*e*a - 4*a*c*d
a*d^2 - e*b^2
b*d^2 - 4*c*e*b + 8*e*a*d
d^2*c - 4*e*c^2 + 2*e*b*d + 16*e^2*a
d^3 - 4*e*d*c + 8*e^2*b
)";
    return s;
}

const std::string& embedded_diagonal_spec() {
    static const std::string s = "1/2 0 0\n0 1/2 0\n0 0 1/2\n";
    return s;
}

std::string digest(const std::string& content) {
    // FNV-1a, rendered as hex; enough to tie a report to its input
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : content) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

json header(const std::string& command, const std::string& input_digest, int precision_bits) {
    json j;
    j["schema"] = "report-v1";
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = input_digest;
    j["precision_bits"] = precision_bits;
    return j;
}

namespace {

std::string bf_str(const BF& x) { return x.str(24); }

} // namespace

json interval_json(const RIv& iv) {
    return json{{"lo", bf_str(iv.lo)}, {"hi", bf_str(iv.hi)}};
}

json civ_json(const CIv& c) {
    return json{{"re", interval_json(c.re)}, {"im", interval_json(c.im)}};
}

json rat_json(const Rat& r) { return json(rat_to_string(r)); }

json validation_json(const quartic13::ValidationReport& rep) {
    json j;
    j["independent"] = rep.independent;
    j["full_rank"] = rep.full_rank;
    j["conics_smooth"] = {rep.conic_smooth[0], rep.conic_smooth[1], rep.conic_smooth[2]};
    j["twelve_intersection_points"] = rep.twelve_points;
    j["positive_definite"] = {rep.positive_definite[0], rep.positive_definite[1],
                              rep.positive_definite[2]};
    j["ok"] = rep.ok();
    j["failures"] = rep.failures;
    return j;
}

json nodes_json(const quartic13::NodeSet& nodes) {
    json j;
    j["count"] = nodes.count();
    j["real_node"] = {rat_json(nodes.real_node[0]), rat_json(nodes.real_node[1]),
                      rat_json(nodes.real_node[2]), rat_json(nodes.real_node[3])};
    json pairs = json::array();
    for (const auto& nl : nodes.conjugate_pairs) {
        json p;
        p["line"] = "E" + std::to_string(nl.i) + "=E" + std::to_string(nl.j) + "=0";
        p["quadratic"] = {rat_json(nl.restricted_Q.coeffs[0]), rat_json(nl.restricted_Q.coeffs[1]),
                          rat_json(nl.restricted_Q.coeffs[2])};
        const auto& c = nl.restricted_Q.coeffs;
        p["discriminant"] = rat_json(c[1] * c[1] - 4 * c[0] * c[2]);
        pairs.push_back(p);
    }
    j["conjugate_pairs"] = pairs;
    return j;
}

json sextic_json(const quartic13::BranchSextic& bs) {
    json j;
    j["sextic"] = to_string(bs.sextic);
    j["contact_witness_degree"] = bs.contact_witness.deg;
    j["six_distinct_contacts"] = bs.witness_squarefree;
    return j;
}

json section_json(const planeq::PlaneQuartic& pq) {
    json j;
    switch (pq.kind) {
        case planeq::SectionKind::Smooth: j["kind"] = "Smooth"; break;
        case planeq::SectionKind::OneNode: j["kind"] = "OneNode"; break;
        case planeq::SectionKind::Degenerate: j["kind"] = "Degenerate"; break;
    }
    j["plane"] = {rat_json(pq.plane.y[0]), rat_json(pq.plane.y[1]), rat_json(pq.plane.y[2]),
                  rat_json(pq.plane.y[3])};
    j["quartic"] = to_string(pq.q);
    if (pq.kind == planeq::SectionKind::OneNode)
        j["node"] = {rat_json(pq.node[0]), rat_json(pq.node[1]), rat_json(pq.node[2])};
    if (pq.kind == planeq::SectionKind::Degenerate)
        j["reason"] = pq.degenerate_reason;
    return j;
}

json bitangent_json(const planeq::Bitangent& bt) {
    json j;
    j["exact"] = bt.exact;
    if (bt.exact) {
        j["line"] = {rat_json(bt.line_exact[0]), rat_json(bt.line_exact[1]),
                     rat_json(bt.line_exact[2])};
    } else {
        j["line"] = {civ_json(bt.line[0]), civ_json(bt.line[1]), civ_json(bt.line[2])};
    }
    j["pivot"] = bt.pivot;
    j["through_node"] = bt.through_node;
    j["fiber_multiplicity"] = bt.fiber_multiplicity;
    return j;
}

json bitangents_json(const planeq::BitangentList& bts) {
    json j;
    j["count"] = bts.list.size();
    j["multiplicity_total"] = bts.multiplicity_total();
    json arr = json::array();
    for (const auto& b : bts.list) arr.push_back(bitangent_json(b));
    j["bitangents"] = arr;
    return j;
}

json families_json(const planeq::FamilyCensus& census, const planeq::PlaneQuartic& pq) {
    json j;
    j["family_count"] = census.families.size();
    json fam = json::array();
    for (const auto& f : census.families) {
        json e;
        e["seed"] = {f.seed_i, f.seed_j};
        json mp = json::array();
        for (auto& [a, b] : f.member_pairs) mp.push_back({a, b});
        e["member_pairs"] = mp;
        e["node_family"] = f.node_family;
        fam.push_back(e);
    }
    j["families"] = fam;
    if (pq.kind == planeq::SectionKind::OneNode) {
        j["pair_types"] = {{"a", census.pairs_a}, {"b", census.pairs_b}, {"c", census.pairs_c}};
        j["intersecting_family_pairs"] = census.intersecting_family_pairs;
    }
    return j;
}

json components_json(const bisec::ComponentCensus& cc) {
    json j;
    json labels = json::array();
    for (auto l : cc.labels) labels.push_back(bisec::to_string(l));
    j["labels"] = labels;
    j["histogram"] = {{"B12", cc.histogram[0]}, {"B13", cc.histogram[1]}, {"B23", cc.histogram[2]}};
    j["obvious_families"] = cc.obvious_families;
    j["e_type_by_class"] = {cc.e_type_by_class[0], cc.e_type_by_class[1], cc.e_type_by_class[2]};
    json splits = json::array();
    for (int c = 0; c < 3; ++c)
        splits.push_back({cc.e_type_split[size_t(c)][0], cc.e_type_split[size_t(c)][1]});
    j["e_type_split"] = splits;
    j["mixed_families"] = cc.mixed_families;
    json dict;
    for (auto& [k, v] : cc.abc_dictionary) dict[k] = bisec::to_string(v);
    j["abc_dictionary"] = dict;
    j["aggregation_ok"] = cc.aggregation_ok;
    return j;
}

json orbit_json() {
    using namespace tconic::lattice;
    json j;
    std::vector<WeylElem> gens;
    for (const auto& x : stabilizer_roots()) gens.push_back(reflection(x));
    Group g = generate_group(gens);
    j["group_order"] = g.order();
    auto lo = orbits_on_lines(g);
    json lsizes = json::array();
    const Lines27& L = lines27();
    for (auto& orb : lo.orbits) {
        json o;
        o["size"] = orb.size();
        json members = json::array();
        for (int x : orb) members.push_back(L.names[size_t(x)]);
        o["lines"] = members;
        lsizes.push_back(o);
    }
    j["line_orbits"] = lsizes;
    auto pos = classified_pair_orbits();
    json porb = json::array();
    for (auto& o : pos) {
        json e;
        e["kind"] = o.kind;
        e["size"] = o.members.size();
        e["incidence"] = o.incidence;
        porb.push_back(e);
    }
    j["pair_orbits"] = porb;
    auto census = yf2_component_census();
    json pc = json::array();
    for (auto& r : census.pair_components)
        pc.push_back({{"kind", r.kind}, {"components", r.component_count},
                      {"points_per_fibre", r.size_per_component}});
    j["pair_component_census"] = pc;
    json fc = json::array();
    for (auto& r : census.family_components)
        fc.push_back({{"kind", r.kind}, {"components", r.component_count},
                      {"families_per_fibre", r.size_per_component}});
    j["family_component_census"] = fc;
    j["pair_total"] = census.total_pairs();
    j["family_total"] = census.total_families();
    auto st = verify_s4_z2_structure();
    j["group_structure_ok"] = st.ok();
    return j;
}

namespace {

void render(std::ostream& os, const json& j, int indent) {
    std::string pad(size_t(indent) * 2, ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object() || it.value().is_array()) {
                os << pad << it.key() << ":\n";
                render(os, it.value(), indent + 1);
            } else {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        size_t i = 0;
        for (const auto& v : j) {
            if (v.is_object() || v.is_array()) {
                os << pad << "- [" << i << "]\n";
                render(os, v, indent + 1);
            } else {
                os << pad << "- " << v.dump() << "\n";
            }
            ++i;
        }
    } else {
        os << pad << j.dump() << "\n";
    }
}

} // namespace

std::string render_text(const json& j) {
    std::ostringstream os;
    render(os, j, 0);
    return os.str();
}

} // namespace tconic::report
