#ifndef TCONIC_PLANE_QUARTIC_HPP
#define TCONIC_PLANE_QUARTIC_HPP

// Plane sections of the quartic surface: certified classification, the
// bitangent solver built on the perfect-square locus eliminants, touching
// conic families seeded from bitangent pairs, and the family census.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tconic/quartic13.hpp"
#include "tconic/conic.hpp"
#include "tconic/interval.hpp"
#include "tconic/rootfind.hpp"

namespace tconic::planeq {

struct PlaneSpec {
    std::array<Rat, 4> y{};                       // plane sum y_i x_i = 0
    std::array<std::array<Rat, 4>, 3> basis{};    // P2 -> P3, point = sum z_k basis[k]

    static PlaneSpec from_coeffs(const std::array<Rat, 4>& y);
};

enum class SectionKind { Smooth, OneNode, Degenerate };

struct PlaneQuartic {
    PlaneSpec plane;
    QPolyN q;                          // ternary quartic in z0, z1, z2
    SectionKind kind = SectionKind::Degenerate;
    std::array<Rat, 3> node{};         // valid when kind == OneNode
    std::string degenerate_reason;
};

PlaneQuartic section(const quartic13::QuarticSurface& S, const PlaneSpec& plane);

// seeded random planes: small-height coefficients, certified Smooth
PlaneSpec random_smooth_plane(const quartic13::QuarticSurface& S, std::uint64_t seed,
                              PlaneQuartic* out_section = nullptr);
// plane through the real node only, certified OneNode
PlaneSpec random_node_plane(const quartic13::QuarticSurface& S, std::uint64_t seed,
                            PlaneQuartic* out_section = nullptr);

// ---- bitangents ----------------------------------------------------------

struct Bitangent {
    std::array<CIv, 3> line;          // covector box, normalized: line[pivot] = 1
    int pivot = 0;                    // index of the coordinate fixed to one
    bool exact = false;
    std::array<Rat, 3> line_exact{};  // valid when exact (same normalization)

    // contact data: q restricted to the line parameterization equals
    //   wit_scale * wit^2   with wit a rational binary quadratic (exact case)
    // or W^2 with W an interval binary quadratic (generic case)
    std::array<std::array<CIv, 3>, 2> param;   // line point = s*param[0] + t*param[1]
    std::array<std::array<Rat, 3>, 2> param_exact{};
    std::array<CIv, 3> witness;       // W: s^2, s t, t^2 coefficients
    Rat wit_scale_exact{};
    QBin wit_exact;                   // valid when exact

    bool through_node = false;
    int fiber_multiplicity = 1;
};

struct BitangentList {
    std::vector<Bitangent> list;
    int multiplicity_total() const;
};

// throws std::domain_error("...refine...") on certification failure
BitangentList bitangents(const PlaneQuartic& pq, mpfr_prec_t prec);

// do the chosen sheets over two bitangents agree at their crossing point?
// true = the two (-1)-curves (ell_1, +W1), (ell_2, +W2) intersect there.
// Exact-exact pairs are decided exactly; otherwise certified intervals.
bool sheets_agree(const PlaneQuartic& pq, const Bitangent& a, const Bitangent& b,
                  mpfr_prec_t prec);

// crossing point of two bitangent lines, as an interval point (exact boxes
// for exact pairs)
std::array<CIv, 3> crossing_point(const Bitangent& a, const Bitangent& b, mpfr_prec_t prec);

// ---- touching families ----------------------------------------------------

struct TouchingFamily {
    std::array<CIv, 6> U, V, W;       // conic 6-vectors (x2,y2,z2,xy,xz,yz)
    std::vector<std::pair<int, int>> member_pairs;  // 6 (or 5 distinct) line pairs
    int seed_i = -1, seed_j = -1;
    bool node_family = false;         // contains the node line pair
};

// family from the reducible conic U = line_i * line_j; returns one family
// generically, two when both lines pass through the node
std::vector<TouchingFamily> family_from_bitangent_pair(const PlaneQuartic& pq,
                                                       const BitangentList& bts,
                                                       int i, int j, mpfr_prec_t prec);

// family from a given decomposition q = (U W - V^2) / c; the scalar is
// absorbed into the returned normalization.  Throws when the identity is
// certainly violated.
TouchingFamily family_from_decomposition(const PlaneQuartic& pq, const std::array<CIv, 6>& U,
                                         const std::array<CIv, 6>& V, const std::array<CIv, 6>& W,
                                         mpfr_prec_t prec);

// the reducible members of a family, matched against the bitangent list;
// fills fam.member_pairs and returns it
const std::vector<std::pair<int, int>>& reducible_members(const PlaneQuartic& pq,
                                                          const BitangentList& bts,
                                                          TouchingFamily& fam, mpfr_prec_t prec);

// multiplicity of a bitangent in the fiber of the incidence scheme: two
// exactly when the line passes through the node
int fiber_multiplicity(const PlaneQuartic& pq, const Bitangent& bt);

struct FamilyCensus {
    std::vector<TouchingFamily> families;
    // pair index -> family ids containing it (1 generically, 2 for node pairs)
    std::map<std::pair<int, int>, std::vector<int>> pair_to_families;
    int pairs_a = 0, pairs_b = 0, pairs_c = 0;     // node-case pair type counts
    int intersecting_family_pairs = 0;             // node case: families sharing a conic
};

FamilyCensus enumerate_families(const PlaneQuartic& pq, const BitangentList& bts,
                                mpfr_prec_t prec);

// the three decompositions visible from the surface equation; exact
struct ObviousFamily {
    int i, j;                          // U = (E_i E_j)|_H with {i,j} in {1..4}
    GConic U, V, W;                    // V = (i/2) Q|_H, W = -(1/4)(E_k E_l)|_H
    std::vector<std::pair<int, int>> member_pairs;
};
std::vector<ObviousFamily> obvious_families(const quartic13::QuarticSurface& S,
                                            const PlaneQuartic& pq,
                                            const BitangentList& bts, mpfr_prec_t prec);

// ---- even-contact certificates --------------------------------------------

struct ContactCertificate {
    bool even = false;
    bool exact = false;               // decided by exact arithmetic
    std::string detail;
};

// exact conic (rational coefficients): decided exactly via resultants
ContactCertificate touches_evenly(const PlaneQuartic& pq, const QConic& conic);
// interval conic (family members): certified at precision
ContactCertificate touches_evenly(const PlaneQuartic& pq, const std::array<CIv, 6>& conic,
                                  mpfr_prec_t prec);

// a pencil member lambda^2 U + 2 lambda mu V + mu^2 W
std::array<CIv, 6> family_member(const TouchingFamily& f, const Rat& lambda, const Rat& mu,
                                 mpfr_prec_t prec);

} // namespace tconic::planeq

#endif
