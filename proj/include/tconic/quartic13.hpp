#ifndef TCONIC_QUARTIC13_HPP
#define TCONIC_QUARTIC13_HPP

// The 13-nodal real quartic family: construction from three linear forms,
// validation of the genericity conditions, the node set, and the branch
// sextic of the projection from the real node.

#include <array>
#include <string>
#include <vector>

#include "tconic/multipoly.hpp"
#include "tconic/binform.hpp"
#include "tconic/upoly.hpp"

namespace tconic::quartic13 {

// Column j of the matrix defines L_j = sum_i a(i,j) x_i.
struct QuarticSpec {
    std::array<std::array<Rat, 3>, 3> a{};

    static QuarticSpec diagonal_half();
    static QuarticSpec from_values(const std::vector<Rat>& nine_row_major);
};

struct QuarticSurface {
    QuarticSpec spec;
    QPolyN F;                  // quartic in x0..x3
    QPolyN Q;                  // 2 f2 + x3^2 - L0^2 - L1^2 - L2^2
    QPolyN f2;                 // x0^2 + x1^2 + x2^2
    std::array<QPolyN, 4> E;   // E1..E4
    std::array<QPolyN, 3> L;   // L0..L2

    static const std::vector<std::string>& vars();   // {"x0","x1","x2","x3"}
};

struct ValidationReport {
    bool independent = false;        // L_j pairwise non-proportional
    bool full_rank = false;          // det of the 3x3 coefficient matrix nonzero
    std::array<bool, 3> conic_smooth{};
    bool twelve_points = false;      // the three conics meet in 12 distinct points
    std::array<bool, 3> positive_definite{};   // f2 - L_j^2 (warning-level)
    std::vector<std::string> failures;
    bool ok() const;
};

// Lines E_i = E_j = 0 carry the six conjugate node pairs.
struct NodeLine {
    int i, j;                              // 1-based plane indices, i < j
    std::array<std::array<Rat, 4>, 2> param;   // point = s*param[0] + t*param[1]
    QBin restricted_Q;                     // Q on the line; its roots are the nodes
};

struct NodeSet {
    std::array<Rat, 4> real_node{Rat(0), Rat(0), Rat(0), Rat(1)};
    std::vector<NodeLine> conjugate_pairs;     // six lines, two nodes each
    int count() const { return 1 + 2 * int(conjugate_pairs.size()); }
};

QuarticSurface build(const QuarticSpec& spec);
ValidationReport validate(const QuarticSpec& spec);
NodeSet nodes(const QuarticSurface& surface);

struct BranchSextic {
    QPolyN sextic;             // (f2 - L0^2)(f2 - L1^2)(f2 - L2^2) in x0..x2
    GBin contact_witness;      // degree-6 witness of the restriction to f2 = 0
    bool witness_squarefree = false;   // six distinct contact points
};

BranchSextic branch_sextic(const QuarticSurface& surface);

// rank of the Hessian of F at a point, exact
int hessian_rank_at(const QPolyN& F, const std::array<Rat, 4>& pt);

} // namespace tconic::quartic13

#endif
