#ifndef TCONIC_UPOLY_HPP
#define TCONIC_UPOLY_HPP

// Dense univariate polynomials over Z and Q: the solver substrate.
// Resultants via subresultant PRS, gcd via small-prime CRT, Yun
// square-free decomposition, Sturm counts and Descartes isolation.

#include <vector>
#include <optional>
#include <utility>
#include "tconic/rational.hpp"

namespace tconic {

struct ZPoly {
    std::vector<Int> c;   // c[i]*x^i, no trailing zeros

    ZPoly() = default;
    explicit ZPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    static ZPoly constant(const Int& v) { return ZPoly(std::vector<Int>{v}); }

    void trim() { while (!c.empty() && sgn(c.back()) == 0) c.pop_back(); }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }   // -1 for zero poly
    const Int& lc() const { return c.back(); }

    bool operator==(const ZPoly& o) const { return c == o.c; }
};

ZPoly operator+(const ZPoly& a, const ZPoly& b);
ZPoly operator-(const ZPoly& a, const ZPoly& b);
ZPoly operator*(const ZPoly& a, const ZPoly& b);
ZPoly mul_scalar(const ZPoly& a, const Int& k);
ZPoly shift_up(const ZPoly& a, int k);          // * x^k

Int content(const ZPoly& a);
ZPoly primitive_part(const ZPoly& a);           // content removed, lc > 0
ZPoly derivative(const ZPoly& a);

Rat eval(const ZPoly& a, const Rat& x);
Int eval(const ZPoly& a, const Int& x);

// Exact division; throws if remainder nonzero.
ZPoly divide_exact(const ZPoly& a, const ZPoly& b);
// True division test.
bool divides(const ZPoly& b, const ZPoly& a);

// Pseudo-remainder prem(a, b) with the standard lc(b)^(da-db+1) premultiplier.
ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b);

// Sylvester resultant of a and b, exact (subresultant PRS).
Int resultant(const ZPoly& a, const ZPoly& b);

// gcd over Z[x] (primitive, positive lc); CRT-modular with exact verification.
ZPoly gcd_z(const ZPoly& a, const ZPoly& b);

ZPoly squarefree_part(const ZPoly& a);
// Yun: returns [(factor, multiplicity)] with factors primitive and squarefree.
std::vector<std::pair<ZPoly,int>> squarefree_decomposition(const ZPoly& a);

// Number of distinct real roots in (lo, hi] via Sturm chains; whole line if
// no bounds given.  Used as the independent counting oracle.
int sturm_count(const ZPoly& a, const std::optional<Rat>& lo, const std::optional<Rat>& hi);
int sturm_count(const ZPoly& a);

struct RootInterval {
    Rat lo, hi;          // lo == hi for an exact rational root
    int multiplicity;
    bool exact() const { return lo == hi; }
};

// Isolating intervals with multiplicities for all real roots, sorted.
// Interval endpoints are dyadic, each open interval contains exactly one root.
std::vector<RootInterval> isolate_real_roots(const ZPoly& a, int target_width_log2 = -64);

// Descartes isolation for a *squarefree* polynomial (no multiplicity tags).
std::vector<RootInterval> isolate_real_roots_squarefree(const ZPoly& a, int target_width_log2 = -64);

// Halve an isolating interval of squarefree p until width <= 2^width_log2.
RootInterval refine_root(const ZPoly& p, RootInterval iv, int width_log2);

// Newton interpolation: the unique poly of degree < points.size() through
// (x_i, y_i); must have integer coefficients (throws otherwise).
ZPoly interpolate_z(const std::vector<Int>& xs, const std::vector<Int>& ys);

// --- Q[x] convenience -------------------------------------------------

struct QPoly {
    std::vector<Rat> c;
    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    void trim() { while (!c.empty() && sgn(c.back()) == 0) c.pop_back(); }
    bool is_zero() const { return c.empty(); }
    int degree() const { return int(c.size()) - 1; }
};

// Clear denominators, return primitive integer poly (projectively equal).
ZPoly to_zpoly(const QPoly& q);

} // namespace tconic

#endif
