#ifndef TCONIC_BISECANTS_HPP
#define TCONIC_BISECANTS_HPP

// The cubic-threefold model: the quartic surface rewritten as
// g1 g3 - g2^2 = 0 lifts to a cubic in P^4; bitangents lift to lines of the
// cubic, project from a node onto bisecants of a three-conic space curve,
// and inherit a component label from the pair of conics they connect.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tconic/quartic13.hpp"
#include "tconic/plane_quartic.hpp"

namespace tconic::bisec {

struct CubicModel {
    QPolyN g1, g2, g3;        // degrees 1, 2, 3 in x0..x3
    QPolyN K;                 // cubic in x0..x4
    static const std::vector<std::string>& vars5();
};

CubicModel build_cubic(const quartic13::QuarticSurface& S);

struct SpaceCurveConfig {
    QPolyN qprime;            // (x3 + L0 + L1 + L2)^2 - 4 f2, in x0..x3
    struct Component {
        int plane_e;          // 2, 3, or 4: the plane E_i = 0 carrying it
        QPolyN plane_form;    // E_i itself
        QPolyN conic;         // f2 - L_j^2 (the matching j)
    };
    std::array<Component, 3> comp;          // S_1, S_2, S_3
    // pairwise intersection quadratics on the lines E_i = E_j = 0
    struct PairMeet {
        int i, j;             // plane labels
        QBin on_line;         // Q' restricted to the line; two simple roots
    };
    std::array<PairMeet, 3> meets;
};

SpaceCurveConfig qprime_and_S(const quartic13::QuarticSurface& S);

// lift of a bitangent to a line in the cubic
struct Lift {
    std::array<CIv, 2> l4;        // l4 = l4[0] s + l4[1] t along the line
    bool second_lift_possible = false;
};

Lift lift_bitangent(const quartic13::QuarticSurface& S, const planeq::PlaneQuartic& pq,
                    const planeq::Bitangent& bt, mpfr_prec_t prec);

enum class CaseLabel {
    SecantTwoPoints,      // connects two different components
    SecantSameComponent,  // the line lies in one of the three planes
    TangentSmoothPoint,   // double contact with one component
    NoContact,
    Undecided,
};

struct BisecantClass {
    CaseLabel label = CaseLabel::Undecided;
    int comp_i = 0, comp_j = 0;    // 1-based component indices where relevant
};

// classify a line in the hyperplane x4 = 0, given by an interval
// parameterization (two spanning points in P^3)
BisecantClass classify_bisecant(const SpaceCurveConfig& cfg,
                                const std::array<std::array<CIv, 4>, 2>& param,
                                mpfr_prec_t prec);

enum class Y0Label { PlaneE1, PlaneE2, PlaneE3, PlaneE4, B12, B13, B23 };

std::string to_string(Y0Label l);

Y0Label y0_component_of(const quartic13::QuarticSurface& S, const planeq::PlaneQuartic& pq,
                        const planeq::Bitangent& bt, mpfr_prec_t prec);

// ---- component census over a plane -----------------------------------------

struct ComponentCensus {
    std::vector<Y0Label> labels;                  // per bitangent
    std::array<int, 3> histogram{};               // B12, B13, B23 counts
    // family classification
    int obvious_families = 0;                     // two e-pairs each
    std::array<int, 3> e_type_by_class{};         // families pairing e with B12/B13/B23
    std::array<std::array<int, 2>, 3> e_type_split{};  // by incidence type of the
                                                  // four cross pairs (meet / skew)
    int mixed_families = 0;                       // no e-line members
    // dictionary fixed by the obvious families
    std::map<std::string, Y0Label> abc_dictionary;    // "A"/"B"/"C" -> B_ij
    bool aggregation_ok = false;                  // 3x1 + 6x8 + 1x12 pattern holds
};

ComponentCensus component_census(const quartic13::QuarticSurface& S,
                                 const planeq::PlaneQuartic& pq,
                                 const planeq::BitangentList& bts,
                                 const planeq::FamilyCensus& fams, mpfr_prec_t prec);

} // namespace tconic::bisec

#endif
