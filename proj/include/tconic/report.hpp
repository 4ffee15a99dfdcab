#ifndef TCONIC_REPORT_HPP
#define TCONIC_REPORT_HPP

// Report assembly for the command-line front end: deterministic JSON (and a
// plain-text rendering of the same payload).

#include <string>

#include "json.hpp"

#include "tconic/quartic13.hpp"
#include "tconic/plane_quartic.hpp"
#include "tconic/bisecants.hpp"
#include "tconic/groebner.hpp"

namespace tconic::report {

using nlohmann::json;

extern const char* kToolVersion;

// embedded copies of the bundled data files
const std::string& embedded_square_basis();
const std::string& embedded_diagonal_spec();

std::string digest(const std::string& content);

json header(const std::string& command, const std::string& input_digest, int precision_bits);

json interval_json(const RIv& iv);
json civ_json(const CIv& c);
json rat_json(const Rat& r);

json validation_json(const quartic13::ValidationReport& rep);
json nodes_json(const quartic13::NodeSet& nodes);
json sextic_json(const quartic13::BranchSextic& bs);
json section_json(const planeq::PlaneQuartic& pq);
json bitangent_json(const planeq::Bitangent& bt);
json bitangents_json(const planeq::BitangentList& bts);
json families_json(const planeq::FamilyCensus& census, const planeq::PlaneQuartic& pq);
json components_json(const bisec::ComponentCensus& cc);
json orbit_json();

// plain-text rendering of a report
std::string render_text(const json& j);

} // namespace tconic::report

#endif
