#include "tconic/interval.hpp"

#include <sstream>
#include <cmath>

namespace tconic {

std::string BF::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, x);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string RIv::str() const {
    return "[" + lo.str() + ", " + hi.str() + "]";
}

std::string CIv::str() const {
    return re.str() + " + " + im.str() + "*i";
}

namespace {
inline mpfr_prec_t pmax(mpfr_prec_t a, mpfr_prec_t b) { return a > b ? a : b; }
}

RIv add(const RIv& a, const RIv& b) {
    mpfr_prec_t p = pmax(a.prec(), b.prec());
    RIv r{BF(p), BF(p)};
    mpfr_add(r.lo.x, a.lo.x, b.lo.x, MPFR_RNDD);
    mpfr_add(r.hi.x, a.hi.x, b.hi.x, MPFR_RNDU);
    return r;
}

RIv sub(const RIv& a, const RIv& b) {
    mpfr_prec_t p = pmax(a.prec(), b.prec());
    RIv r{BF(p), BF(p)};
    mpfr_sub(r.lo.x, a.lo.x, b.hi.x, MPFR_RNDD);
    mpfr_sub(r.hi.x, a.hi.x, b.lo.x, MPFR_RNDU);
    return r;
}

RIv neg(const RIv& a) {
    RIv r{BF(a.prec()), BF(a.prec())};
    mpfr_neg(r.lo.x, a.hi.x, MPFR_RNDD);
    mpfr_neg(r.hi.x, a.lo.x, MPFR_RNDU);
    return r;
}

RIv mul(const RIv& a, const RIv& b) {
    mpfr_prec_t p = pmax(a.prec(), b.prec());
    BF cand(p);
    RIv r{BF(p), BF(p)};
    bool first = true;
    mpfr_srcptr as[2] = {a.lo.x, a.hi.x};
    mpfr_srcptr bs[2] = {b.lo.x, b.hi.x};
    for (auto ap : as)
        for (auto bp : bs) {
            mpfr_mul(cand.x, ap, bp, MPFR_RNDD);
            if (first || mpfr_cmp(cand.x, r.lo.x) < 0) mpfr_set(r.lo.x, cand.x, MPFR_RNDD);
            mpfr_mul(cand.x, ap, bp, MPFR_RNDU);
            if (first || mpfr_cmp(cand.x, r.hi.x) > 0) mpfr_set(r.hi.x, cand.x, MPFR_RNDU);
            first = false;
        }
    return r;
}

RIv div(const RIv& a, const RIv& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by zero-containing interval");
    mpfr_prec_t p = pmax(a.prec(), b.prec());
    BF cand(p);
    RIv r{BF(p), BF(p)};
    bool first = true;
    mpfr_srcptr as[2] = {a.lo.x, a.hi.x};
    mpfr_srcptr bs[2] = {b.lo.x, b.hi.x};
    for (auto ap : as)
        for (auto bp : bs) {
            mpfr_div(cand.x, ap, bp, MPFR_RNDD);
            if (first || mpfr_cmp(cand.x, r.lo.x) < 0) mpfr_set(r.lo.x, cand.x, MPFR_RNDD);
            mpfr_div(cand.x, ap, bp, MPFR_RNDU);
            if (first || mpfr_cmp(cand.x, r.hi.x) > 0) mpfr_set(r.hi.x, cand.x, MPFR_RNDU);
            first = false;
        }
    return r;
}

RIv sqrt_nonneg(const RIv& a) {
    if (mpfr_sgn(a.lo.x) < 0) throw std::domain_error("sqrt of interval with negative part");
    RIv r{BF(a.prec()), BF(a.prec())};
    mpfr_sqrt(r.lo.x, a.lo.x, MPFR_RNDD);
    mpfr_sqrt(r.hi.x, a.hi.x, MPFR_RNDU);
    return r;
}

RIv hull(const RIv& a, const RIv& b) {
    mpfr_prec_t p = pmax(a.prec(), b.prec());
    RIv r{BF(p), BF(p)};
    mpfr_set(r.lo.x, mpfr_cmp(a.lo.x, b.lo.x) < 0 ? a.lo.x : b.lo.x, MPFR_RNDD);
    mpfr_set(r.hi.x, mpfr_cmp(a.hi.x, b.hi.x) > 0 ? a.hi.x : b.hi.x, MPFR_RNDU);
    return r;
}

RIv widen(const RIv& a, double factor_pow2exp) {
    RIv r = a;
    BF d(a.prec());
    mpfr_sub(d.x, a.hi.x, a.lo.x, MPFR_RNDU);
    if (mpfr_zero_p(d.x)) {
        // zero width: inflate by ulp-scale amount relative to magnitude
        mpfr_abs(d.x, a.hi.x, MPFR_RNDU);
        if (mpfr_zero_p(d.x)) mpfr_set_d(d.x, 1.0, MPFR_RNDU);
        mpfr_mul_2si(d.x, d.x, -int(a.prec()) + 4, MPFR_RNDU);
    }
    mpfr_mul_2si(d.x, d.x, long(factor_pow2exp), MPFR_RNDU);
    mpfr_sub(r.lo.x, a.lo.x, d.x, MPFR_RNDD);
    mpfr_add(r.hi.x, a.hi.x, d.x, MPFR_RNDU);
    return r;
}

RIv intersect(const RIv& a, const RIv& b) {
    RIv r{BF(pmax(a.prec(), b.prec())), BF(pmax(a.prec(), b.prec()))};
    mpfr_set(r.lo.x, mpfr_cmp(a.lo.x, b.lo.x) > 0 ? a.lo.x : b.lo.x, MPFR_RNDD);
    mpfr_set(r.hi.x, mpfr_cmp(a.hi.x, b.hi.x) < 0 ? a.hi.x : b.hi.x, MPFR_RNDU);
    if (mpfr_cmp(r.lo.x, r.hi.x) > 0) throw std::domain_error("empty interval intersection");
    return r;
}

CIv CIv::conj() const { return {re, tconic::neg(im)}; }

CIv add(const CIv& a, const CIv& b) { return {add(a.re, b.re), add(a.im, b.im)}; }
CIv sub(const CIv& a, const CIv& b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }
CIv neg(const CIv& a) { return {neg(a.re), neg(a.im)}; }

CIv mul(const CIv& a, const CIv& b) {
    return {sub(mul(a.re, b.re), mul(a.im, b.im)),
            add(mul(a.re, b.im), mul(a.im, b.re))};
}

RIv norm2(const CIv& a) {
    RIv r2 = mul(a.re, a.re), i2 = mul(a.im, a.im);
    RIv s = add(r2, i2);
    // squares are nonnegative; clamp the lower end at 0
    if (mpfr_sgn(s.lo.x) < 0) mpfr_set_zero(s.lo.x, 1);
    return s;
}

CIv div(const CIv& a, const CIv& b) {
    RIv n = norm2(b);
    if (n.contains_zero()) throw std::domain_error("complex interval division by zero-containing box");
    CIv num = mul(a, b.conj());
    return {div(num.re, n), div(num.im, n)};
}

CIv hull(const CIv& a, const CIv& b) { return {hull(a.re, b.re), hull(a.im, b.im)}; }
CIv widen(const CIv& a, double e) { return {widen(a.re, e), widen(a.im, e)}; }
CIv intersect(const CIv& a, const CIv& b) { return {intersect(a.re, b.re), intersect(a.im, b.im)}; }

double mag_d(const CIv& a) {
    double r = mpfr_get_d(a.re.mag().x, MPFR_RNDU);
    double i = mpfr_get_d(a.im.mag().x, MPFR_RNDU);
    return std::hypot(r, i);
}

MPC add(const MPC& a, const MPC& b) {
    MPC r = MPC::zero(std::max(a.re.prec(), b.re.prec()));
    mpfr_add(r.re.x, a.re.x, b.re.x, MPFR_RNDN);
    mpfr_add(r.im.x, a.im.x, b.im.x, MPFR_RNDN);
    return r;
}

MPC sub(const MPC& a, const MPC& b) {
    MPC r = MPC::zero(std::max(a.re.prec(), b.re.prec()));
    mpfr_sub(r.re.x, a.re.x, b.re.x, MPFR_RNDN);
    mpfr_sub(r.im.x, a.im.x, b.im.x, MPFR_RNDN);
    return r;
}

MPC mul(const MPC& a, const MPC& b) {
    mpfr_prec_t p = std::max(a.re.prec(), b.re.prec());
    MPC r = MPC::zero(p);
    BF t1(p), t2(p);
    mpfr_mul(t1.x, a.re.x, b.re.x, MPFR_RNDN);
    mpfr_mul(t2.x, a.im.x, b.im.x, MPFR_RNDN);
    mpfr_sub(r.re.x, t1.x, t2.x, MPFR_RNDN);
    mpfr_mul(t1.x, a.re.x, b.im.x, MPFR_RNDN);
    mpfr_mul(t2.x, a.im.x, b.re.x, MPFR_RNDN);
    mpfr_add(r.im.x, t1.x, t2.x, MPFR_RNDN);
    return r;
}

MPC div(const MPC& a, const MPC& b) {
    mpfr_prec_t p = std::max(a.re.prec(), b.re.prec());
    BF n(p), t1(p), t2(p);
    mpfr_mul(t1.x, b.re.x, b.re.x, MPFR_RNDN);
    mpfr_mul(t2.x, b.im.x, b.im.x, MPFR_RNDN);
    mpfr_add(n.x, t1.x, t2.x, MPFR_RNDN);
    MPC r = MPC::zero(p);
    mpfr_mul(t1.x, a.re.x, b.re.x, MPFR_RNDN);
    mpfr_mul(t2.x, a.im.x, b.im.x, MPFR_RNDN);
    mpfr_add(t1.x, t1.x, t2.x, MPFR_RNDN);
    mpfr_div(r.re.x, t1.x, n.x, MPFR_RNDN);
    mpfr_mul(t1.x, a.im.x, b.re.x, MPFR_RNDN);
    mpfr_mul(t2.x, a.re.x, b.im.x, MPFR_RNDN);
    mpfr_sub(t1.x, t1.x, t2.x, MPFR_RNDN);
    mpfr_div(r.im.x, t1.x, n.x, MPFR_RNDN);
    return r;
}

double abs_d(const MPC& a) {
    return std::hypot(a.re.to_double(), a.im.to_double());
}

} // namespace tconic
