#ifndef TCONIC_INTERVAL_HPP
#define TCONIC_INTERVAL_HPP

// Directed-rounding interval arithmetic over MPFR endpoints, with complex
// rectangles on top.  Every operation rounds outward, so any enclosure
// statement ("contains zero", "excludes zero", subset tests) is certified.

#include <mpfr.h>
#include <string>
#include <vector>
#include <stdexcept>

#include "tconic/rational.hpp"

namespace tconic {

class BF {
public:
    mpfr_t x;

    BF() { mpfr_init2(x, 64); mpfr_set_zero(x, 1); }
    explicit BF(mpfr_prec_t p) { mpfr_init2(x, p); mpfr_set_zero(x, 1); }
    BF(const BF& o) { mpfr_init2(x, mpfr_get_prec(o.x)); mpfr_set(x, o.x, MPFR_RNDN); }
    BF(BF&& o) noexcept {
        mpfr_init2(x, mpfr_get_prec(o.x));
        mpfr_swap(x, o.x);
    }
    BF& operator=(const BF& o) {
        if (this != &o) {
            mpfr_set_prec(x, mpfr_get_prec(o.x));
            mpfr_set(x, o.x, MPFR_RNDN);
        }
        return *this;
    }
    BF& operator=(BF&& o) noexcept {
        if (this != &o) mpfr_swap(x, o.x);
        return *this;
    }
    ~BF() { mpfr_clear(x); }

    mpfr_prec_t prec() const { return mpfr_get_prec(x); }
    int sign() const { return mpfr_sgn(x); }
    double to_double() const { return mpfr_get_d(x, MPFR_RNDN); }
    std::string str(int digits = 17) const;
    Rat to_rat() const {
        if (!mpfr_number_p(x)) throw std::domain_error("BF::to_rat of non-finite");
        mpq_t q;
        mpq_init(q);
        mpfr_get_q(q, x);
        Rat r(q);
        mpq_clear(q);
        return r;
    }
};

// Real interval [lo, hi]; invariant lo <= hi, endpoints finite unless marked.
class RIv {
public:
    BF lo, hi;

    RIv() = default;
    RIv(const BF& l, const BF& h) : lo(l), hi(h) {}

    static RIv exact(long v, mpfr_prec_t p) {
        RIv r{BF(p), BF(p)};
        mpfr_set_si(r.lo.x, v, MPFR_RNDD);
        mpfr_set_si(r.hi.x, v, MPFR_RNDU);
        return r;
    }
    static RIv from_rat(const Rat& q, mpfr_prec_t p) {
        RIv r{BF(p), BF(p)};
        mpfr_set_q(r.lo.x, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi.x, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static RIv from_rats(const Rat& a, const Rat& b, mpfr_prec_t p) {
        RIv r{BF(p), BF(p)};
        mpfr_set_q(r.lo.x, a.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi.x, b.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    mpfr_prec_t prec() const { return std::max(lo.prec(), hi.prec()); }

    bool contains_zero() const { return mpfr_sgn(lo.x) <= 0 && mpfr_sgn(hi.x) >= 0; }
    bool excludes_zero() const { return mpfr_sgn(lo.x) > 0 || mpfr_sgn(hi.x) < 0; }
    // definite sign: +1, -1, or 0 when undecided
    int sign() const {
        if (mpfr_sgn(lo.x) > 0) return 1;
        if (mpfr_sgn(hi.x) < 0) return -1;
        return 0;
    }
    bool contains(const Rat& q) const {
        return mpfr_cmp_q(lo.x, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.x, q.get_mpq_t()) >= 0;
    }
    bool subset_interior(const RIv& o) const {
        return mpfr_cmp(o.lo.x, lo.x) < 0 && mpfr_cmp(hi.x, o.hi.x) < 0;
    }
    bool subset(const RIv& o) const {
        return mpfr_cmp(o.lo.x, lo.x) <= 0 && mpfr_cmp(hi.x, o.hi.x) <= 0;
    }
    bool disjoint(const RIv& o) const {
        return mpfr_cmp(hi.x, o.lo.x) < 0 || mpfr_cmp(o.hi.x, lo.x) < 0;
    }

    BF mid() const {
        BF m(prec());
        mpfr_add(m.x, lo.x, hi.x, MPFR_RNDN);
        mpfr_div_2ui(m.x, m.x, 1, MPFR_RNDN);
        return m;
    }
    Rat mid_rat() const { return mid().to_rat(); }
    BF rad() const {
        BF r(prec());
        mpfr_sub(r.x, hi.x, lo.x, MPFR_RNDU);
        mpfr_div_2ui(r.x, r.x, 1, MPFR_RNDU);
        return r;
    }
    double width_d() const {
        BF r(prec());
        mpfr_sub(r.x, hi.x, lo.x, MPFR_RNDU);
        return mpfr_get_d(r.x, MPFR_RNDU);
    }
    // |interval| upper bound
    BF mag() const {
        BF a(prec()), b(prec());
        mpfr_abs(a.x, lo.x, MPFR_RNDU);
        mpfr_abs(b.x, hi.x, MPFR_RNDU);
        if (mpfr_cmp(a.x, b.x) < 0) return b;
        return a;
    }

    std::string str() const;
};

RIv add(const RIv& a, const RIv& b);
RIv sub(const RIv& a, const RIv& b);
RIv mul(const RIv& a, const RIv& b);
RIv div(const RIv& a, const RIv& b);       // throws if 0 in b
RIv neg(const RIv& a);
RIv sqrt_nonneg(const RIv& a);             // throws if lo < 0
RIv hull(const RIv& a, const RIv& b);
RIv widen(const RIv& a, double factor_pow2exp);   // inflate by 2^exp * rad
RIv intersect(const RIv& a, const RIv& b); // throws if empty

inline RIv operator+(const RIv& a, const RIv& b) { return add(a, b); }
inline RIv operator-(const RIv& a, const RIv& b) { return sub(a, b); }
inline RIv operator*(const RIv& a, const RIv& b) { return mul(a, b); }
inline RIv operator/(const RIv& a, const RIv& b) { return div(a, b); }
inline RIv operator-(const RIv& a) { return neg(a); }

// Complex rectangle.
class CIv {
public:
    RIv re, im;

    CIv() = default;
    CIv(const RIv& r, const RIv& i) : re(r), im(i) {}

    static CIv exact(long v, mpfr_prec_t p) { return {RIv::exact(v, p), RIv::exact(0, p)}; }
    static CIv from_rat(const Rat& q, mpfr_prec_t p) { return {RIv::from_rat(q, p), RIv::exact(0, p)}; }
    static CIv from_gauss(const GaussRat& z, mpfr_prec_t p) {
        return {RIv::from_rat(z.re, p), RIv::from_rat(z.im, p)};
    }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool excludes_zero() const { return re.excludes_zero() || im.excludes_zero(); }
    bool disjoint(const CIv& o) const { return re.disjoint(o.re) || im.disjoint(o.im); }
    bool subset_interior(const CIv& o) const {
        return re.subset_interior(o.re) && im.subset_interior(o.im);
    }
    bool contains(const GaussRat& z) const { return re.contains(z.re) && im.contains(z.im); }
    CIv conj() const;
    double width_d() const { return std::max(re.width_d(), im.width_d()); }
    std::string str() const;
};

CIv add(const CIv& a, const CIv& b);
CIv sub(const CIv& a, const CIv& b);
CIv mul(const CIv& a, const CIv& b);
CIv div(const CIv& a, const CIv& b);       // throws if 0 possibly in b
CIv neg(const CIv& a);
RIv norm2(const CIv& a);                   // re^2 + im^2 (nonneg enclosure)
CIv hull(const CIv& a, const CIv& b);
CIv widen(const CIv& a, double factor_pow2exp);
CIv intersect(const CIv& a, const CIv& b);

inline CIv operator+(const CIv& a, const CIv& b) { return add(a, b); }
inline CIv operator-(const CIv& a, const CIv& b) { return sub(a, b); }
inline CIv operator*(const CIv& a, const CIv& b) { return mul(a, b); }
inline CIv operator/(const CIv& a, const CIv& b) { return div(a, b); }
inline CIv operator-(const CIv& a) { return neg(a); }

// upper bound of |a| as double
double mag_d(const CIv& a);

// Complex floating point at mpfr precision (for Aberth iterations; no
// certification claims, those come from the interval layer).
struct MPC {
    BF re, im;
    MPC() = default;
    MPC(const BF& r, const BF& i) : re(r), im(i) {}
    static MPC zero(mpfr_prec_t p) { return {BF(p), BF(p)}; }
};

MPC add(const MPC& a, const MPC& b);
MPC sub(const MPC& a, const MPC& b);
MPC mul(const MPC& a, const MPC& b);
MPC div(const MPC& a, const MPC& b);
double abs_d(const MPC& a);

} // namespace tconic

#endif
