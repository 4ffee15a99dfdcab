#ifndef TCONIC_BINFORM_HPP
#define TCONIC_BINFORM_HPP

// Homogeneous binary forms in (s,t) over an exact field, dense.
// coeffs[i] is the coefficient of s^(deg-i) * t^i.

#include <vector>
#include <optional>
#include <stdexcept>

#include "tconic/rational.hpp"
#include "tconic/multipoly.hpp"

namespace tconic {

// exact square root in Q, if any
inline std::optional<Rat> sqrt_exact(const Rat& r) {
    if (sgn(r) < 0) return std::nullopt;
    if (sgn(r) == 0) return Rat(0);
    Int n = r.get_num(), d = r.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return std::nullopt;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return rat(sn, sd);
}

// exact square root in Q(i), if any
inline std::optional<GaussRat> sqrt_exact(const GaussRat& z) {
    if (is_zero(z)) return GaussRat(0);
    if (sgn(z.im) == 0) {
        if (auto s = sqrt_exact(z.re)) return GaussRat(*s);
        if (auto s = sqrt_exact(-z.re)) return GaussRat(Rat(0), *s);
        return std::nullopt;
    }
    // (x+iy)^2 = z:  x^2 = (re + |z|)/2, y = im/(2x)
    auto n = sqrt_exact(z.norm());
    if (!n) return std::nullopt;
    Rat x2 = (z.re + *n) / 2;
    auto x = sqrt_exact(x2);
    if (!x || sgn(*x) == 0) {
        x2 = (z.re - *n) / 2;
        x = sqrt_exact(x2);
        if (!x || sgn(*x) == 0) return std::nullopt;
    }
    Rat y = z.im / (2 * *x);
    GaussRat w(*x, y);
    if (w * w == z) return w;
    return std::nullopt;
}

// canonical sign: first nonzero coefficient "positive"
inline bool sign_canonical(const Rat& c) { return sgn(c) > 0; }
inline bool sign_canonical(const GaussRat& c) {
    if (sgn(c.re) != 0) return sgn(c.re) > 0;
    return sgn(c.im) > 0;
}

template <class F>
struct BinaryForm {
    int deg = 0;
    std::vector<F> coeffs;   // length deg+1; may be all-zero (the zero form)

    BinaryForm() : deg(0), coeffs(1, F(0)) {}
    BinaryForm(int d, std::vector<F> c) : deg(d), coeffs(std::move(c)) {
        if (int(coeffs.size()) != deg + 1) throw std::invalid_argument("binary form length mismatch");
    }
    static BinaryForm zero(int d) { return BinaryForm(d, std::vector<F>(size_t(d) + 1, F(0))); }

    bool is_zero_form() const {
        for (auto& c : coeffs) if (!is_zero(c)) return false;
        return true;
    }

    F eval(const F& s, const F& t) const {
        // Horner in two stages to stay exact and cheap
        F acc(0);
        for (int i = 0; i <= deg; ++i) {
            F term = coeffs[size_t(i)];
            for (int k = 0; k < deg - i; ++k) term *= s;
            for (int k = 0; k < i; ++k) term *= t;
            acc += term;
        }
        return acc;
    }

    BinaryForm operator+(const BinaryForm& o) const {
        if (deg != o.deg) throw std::invalid_argument("degree mismatch");
        BinaryForm r = *this;
        for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] += o.coeffs[i];
        return r;
    }
    BinaryForm operator-(const BinaryForm& o) const {
        if (deg != o.deg) throw std::invalid_argument("degree mismatch");
        BinaryForm r = *this;
        for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] -= o.coeffs[i];
        return r;
    }
    BinaryForm operator*(const BinaryForm& o) const {
        BinaryForm r = zero(deg + o.deg);
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; j <= o.deg; ++j)
                r.coeffs[size_t(i + j)] += coeffs[size_t(i)] * o.coeffs[size_t(j)];
        return r;
    }
    BinaryForm operator*(const F& k) const {
        BinaryForm r = *this;
        for (auto& c : r.coeffs) c *= k;
        return r;
    }
    BinaryForm operator-() const { return *this * F(-1); }
    bool operator==(const BinaryForm& o) const { return deg == o.deg && coeffs == o.coeffs; }

    // d/ds and d/dt
    BinaryForm ds() const {
        if (deg == 0) return zero(0);
        BinaryForm r = zero(deg - 1);
        for (int i = 0; i < deg; ++i) r.coeffs[size_t(i)] = coeffs[size_t(i)] * F(deg - i);
        return r;
    }
    BinaryForm dt() const {
        if (deg == 0) return zero(0);
        BinaryForm r = zero(deg - 1);
        for (int i = 1; i <= deg; ++i) r.coeffs[size_t(i - 1)] = coeffs[size_t(i)] * F(i);
        return r;
    }
};

using QBin = BinaryForm<Rat>;
using GBin = BinaryForm<GaussRat>;

// divide with remainder in the dehomogenized sense: a = q*b + r, viewing
// forms as polynomials in s with t = 1; b's leading s-coefficient must be
// nonzero (after stripping t-powers the caller arranged).
template <class F>
std::pair<BinaryForm<F>, BinaryForm<F>> divmod_s(const BinaryForm<F>& a, const BinaryForm<F>& b) {
    // locate b's leading s-term
    int blead = -1;
    for (int i = 0; i <= b.deg; ++i)
        if (!is_zero(b.coeffs[size_t(i)])) { blead = i; break; }
    if (blead != 0) throw std::domain_error("divmod_s needs b with nonzero s^deg coefficient");
    int dq = a.deg - b.deg;
    if (dq < 0) return {BinaryForm<F>::zero(0), a};
    BinaryForm<F> q = BinaryForm<F>::zero(dq);
    BinaryForm<F> r = a;
    for (int k = 0; k <= dq; ++k) {
        F f = r.coeffs[size_t(k)] / b.coeffs[0];
        q.coeffs[size_t(k)] = f;
        for (int j = 0; j <= b.deg; ++j)
            r.coeffs[size_t(k + j)] -= f * b.coeffs[size_t(j)];
    }
    // remainder: drop the quotient-range coefficients (they are zero now)
    return {q, r};
}

// gcd of two binary forms over a field, monic-normalized (first nonzero
// coefficient 1); returns the zero form of degree 0 when both inputs vanish.
// Works on the dehomogenizations (t = 1) and tracks the common monomial part
// of the inputs separately.
template <class F>
BinaryForm<F> gcd_bin(BinaryForm<F> a, BinaryForm<F> b) {
    if (a.is_zero_form() && b.is_zero_form()) return BinaryForm<F>::zero(0);
    if (a.is_zero_form()) std::swap(a, b);
    // strip the monomial part: f = s^sp * t^tp * core, core with nonzero ends
    auto strip = [](const BinaryForm<F>& f, int& sp, int& tp) {
        int lo = 0, hi = f.deg;
        while (is_zero(f.coeffs[size_t(lo)])) ++lo;      // leading t-powers
        while (is_zero(f.coeffs[size_t(hi)])) --hi;      // trailing s-powers
        tp = lo;
        sp = f.deg - hi;
        // dehomogenized core as a univariate in u = s/t, low-degree first:
        // core = sum coeffs[lo..hi], coefficient of u^(hi - i) is coeffs[i]
        std::vector<F> u(size_t(hi - lo) + 1);
        for (int i = lo; i <= hi; ++i) u[size_t(hi - i)] = f.coeffs[size_t(i)];
        return u;
    };
    int as, at;
    auto ua = strip(a, as, at);
    int bs = 0, bt = 0;
    std::vector<F> ub;
    bool b_zero = b.is_zero_form();
    if (!b_zero) ub = strip(b, bs, bt);
    int cs = b_zero ? as : std::min(as, bs);
    int ct = b_zero ? at : std::min(at, bt);
    // plain Euclid over the field
    auto trim = [](std::vector<F>& v) { while (!v.empty() && is_zero(v.back())) v.pop_back(); };
    while (!ub.empty()) {
        // ua mod ub
        while (ua.size() >= ub.size() && !ua.empty()) {
            F f = ua.back() / ub.back();
            size_t off = ua.size() - ub.size();
            for (size_t i = 0; i < ub.size(); ++i) ua[off + i] -= f * ub[i];
            trim(ua);
        }
        std::swap(ua, ub);
    }
    // monic
    F lead = ua.back();
    for (auto& c : ua) c = c / lead;
    int gdeg = int(ua.size()) - 1;
    BinaryForm<F> g = BinaryForm<F>::zero(gdeg + cs + ct);
    for (int i = 0; i <= gdeg; ++i) g.coeffs[size_t(ct + gdeg - i)] = ua[size_t(i)];
    return g;
}

// perfect-square witness: g with g*g == q exactly, sign-normalized; nullopt
// if q is not the square of a form over F.
template <class F>
std::optional<BinaryForm<F>> perfect_square_witness(const BinaryForm<F>& q) {
    if (q.deg % 2 != 0) throw std::invalid_argument("perfect_square_witness: odd degree");
    if (q.is_zero_form()) return BinaryForm<F>::zero(q.deg / 2);
    // strip powers of t and of s; both must be even
    int lo = 0, hi = q.deg;
    while (is_zero(q.coeffs[size_t(lo)])) ++lo;      // s-side zero coeffs -> powers of t
    while (is_zero(q.coeffs[size_t(hi)])) --hi;
    // q = s^a t^b * core, a = deg-hi, b = lo
    int tp = lo, sp = q.deg - hi;
    if (tp % 2 || sp % 2) return std::nullopt;
    int cd = hi - lo;               // core degree
    if (cd % 2) return std::nullopt;
    std::vector<F> core(q.coeffs.begin() + lo, q.coeffs.begin() + hi + 1);
    int k = cd / 2;
    auto g0 = sqrt_exact(core[0]);
    if (!g0) return std::nullopt;
    std::vector<F> g(size_t(k) + 1, F(0));
    g[0] = *g0;
    for (int i = 1; i <= k; ++i) {
        F acc = core[size_t(i)];
        for (int j = 1; j < i; ++j)
            if (j <= k && i - j <= k) acc -= g[size_t(j)] * g[size_t(i - j)];
        g[size_t(i)] = acc / (g[0] * F(2));
    }
    BinaryForm<F> w(k, std::move(g));
    // verify on the full core
    BinaryForm<F> sq = w * w;
    for (int i = 0; i <= cd; ++i)
        if (!(sq.coeffs[size_t(i)] == core[size_t(i)])) return std::nullopt;
    // reattach s^(sp/2) t^(tp/2)
    BinaryForm<F> full = BinaryForm<F>::zero(q.deg / 2);
    for (int i = 0; i <= k; ++i) full.coeffs[size_t(i + tp / 2)] = w.coeffs[size_t(i)];
    // sign normalization
    for (auto& c : full.coeffs) {
        if (is_zero(c)) continue;
        if (!sign_canonical(c)) full = -full;
        break;
    }
    return full;
}

// Restrict a homogeneous polynomial to a line given by a degree-1
// parameterization: images[i] = (s_coef, t_coef) for variable i.
template <class F>
BinaryForm<F> restrict_to_param(const MultiPoly<F>& f,
                                const std::vector<std::pair<F, F>>& images) {
    if (!f.is_homogeneous()) throw std::invalid_argument("restrict_to_param: non-homogeneous input");
    if (images.size() != f.nvars()) throw std::invalid_argument("restrict_to_param: arity");
    int d = std::max(f.total_degree(), 0);
    std::vector<std::string> st{"s", "t"};
    std::vector<MultiPoly<F>> imgs;
    for (auto& [cs, ct] : images) {
        MultiPoly<F> l(st);
        l.add_term({1, 0}, cs);
        l.add_term({0, 1}, ct);
        imgs.push_back(l);
    }
    MultiPoly<F> r = f.compose(imgs);
    BinaryForm<F> out = BinaryForm<F>::zero(d);
    for (auto& [e, c] : r.terms) {
        if (e[0] + e[1] != d) throw std::logic_error("restriction degree drop");
        out.coeffs[size_t(e[1])] += c;
    }
    return out;
}

// reduce a binary form modulo another (in the s-leading sense): remainder of
// divmod_s, used for arithmetic modulo the node-pair quadratics.
template <class F>
BinaryForm<F> mod_bin(const BinaryForm<F>& a, const BinaryForm<F>& m) {
    auto [q, r] = divmod_s(a, m);
    (void)q;
    return r;
}

// Restrict a homogeneous ternary polynomial to the line u0 x0 + u1 x1 +
// u2 x2 = 0, parameterized through the pivot coordinate (the largest entry).
template <class F>
BinaryForm<F> restrict_to_line(const MultiPoly<F>& f, const std::array<F, 3>& u) {
    if (f.nvars() != 3) throw std::invalid_argument("restrict_to_line: need 3 variables");
    size_t piv = 3;
    for (size_t i = 0; i < 3; ++i)
        if (!is_zero(u[i])) piv = i;
    if (piv == 3) throw std::invalid_argument("restrict_to_line: zero line");
    size_t a = (piv + 1) % 3, b = (piv + 2) % 3;
    // points P0: coord a = 1, P1: coord b = 1, pivot solved from the line
    std::vector<std::pair<F, F>> img(3, {F(0), F(0)});
    img[a].first = F(1);
    img[b].second = F(1);
    img[piv].first = -(u[a] / u[piv]);
    img[piv].second = -(u[b] / u[piv]);
    return restrict_to_param(f, img);
}

} // namespace tconic

#endif
