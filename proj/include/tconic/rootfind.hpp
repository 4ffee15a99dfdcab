#ifndef TCONIC_ROOTFIND_HPP
#define TCONIC_ROOTFIND_HPP

// Certified root machinery: Aberth iteration at MPFR precision for initial
// guesses, interval-Newton contraction for existence/uniqueness proofs,
// completeness by degree count for squarefree integer polynomials.

#include <optional>
#include <vector>

#include "tconic/upoly.hpp"
#include "tconic/interval.hpp"
#include "tconic/multipoly.hpp"

namespace tconic {

// ---- interval polynomial helpers (dense univariate, CIv coefficients) ----

CIv eval_poly(const std::vector<CIv>& c, const CIv& z);
std::vector<CIv> derive_poly(const std::vector<CIv>& c);

// One interval-Newton step N(X) = mid - p(mid)/p'(X); returns the
// intersection with X, or nullopt when p'(X) straddles zero or the
// intersection is empty.
std::optional<CIv> newton_step(const std::vector<CIv>& c, const std::vector<CIv>& dc, const CIv& box);

// Try to certify a unique root near z0: inflate, check N(X) is a strict
// subset of X, then iterate Newton to shrink.  Returns the certified box.
std::optional<CIv> certify_root(const std::vector<CIv>& c, const MPC& z0, int target_width_log2);

// All roots of a polynomial given by interval coefficients whose true degree
// is known to the caller (leading coefficient interval must exclude zero up
// to expected_deg).  Throws on certification failure.
std::vector<CIv> roots_of_interval_poly(const std::vector<CIv>& c, int expected_deg,
                                        int target_width_log2);

// ---- Aberth (floating, no certificates) --------------------------------

std::vector<MPC> aberth(const std::vector<MPC>& coeffs, mpfr_prec_t prec, int max_iter = 400);

// ---- certified roots of exact integer polynomials -----------------------

struct CertRoot {
    CIv box;
    bool real = false;
    bool is_rational = false;
    Rat value;              // set when is_rational
};

// All distinct complex roots of a *squarefree* integer polynomial, as
// pairwise-disjoint certified boxes (count == degree, proven).  Real roots
// come from exact Descartes isolation, nonreal ones from Aberth + interval
// Newton, closed under conjugation.
std::vector<CertRoot> all_roots_certified(const ZPoly& sf, mpfr_prec_t prec,
                                          int target_width_log2);

// ---- exact-coefficient evaluation over intervals -------------------------

CIv to_civ(const Rat& r, mpfr_prec_t p);
CIv to_civ(const GaussRat& z, mpfr_prec_t p);

std::vector<CIv> to_civ(const std::vector<Rat>& v, mpfr_prec_t p);

// ZPoly at a complex box, Horner
CIv eval_civ(const ZPoly& f, const CIv& z, mpfr_prec_t p);

// sparse multivariate at a complex point vector
CIv eval_civ(const MultiPoly<Rat>& f, const std::vector<CIv>& x, mpfr_prec_t p);
CIv eval_civ(const MultiPoly<GaussRat>& f, const std::vector<CIv>& x, mpfr_prec_t p);

// rational reconstruction from a tight box: returns a small-height rational
// inside the box if one exists (continued-fraction convergent).
std::optional<Rat> small_rational_in(const RIv& iv);

// certified square root of a complex box that excludes zero: a box W with
// W*W enclosing x, via a Newton contraction on w^2 - x.  Branch follows the
// principal square root of the midpoint.
CIv sqrt_civ(const CIv& x, mpfr_prec_t prec);

} // namespace tconic

#endif
