#include "tconic/plane_quartic.hpp"
#include "tconic/square_locus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// The bitangent solver.  A line in the chart z0 = l1 z1 + l2 z2 restricts
// the quartic to a binary form whose coefficients are polynomials in
// (l1, l2); the line is a bitangent exactly when the seven square-locus
// eliminants vanish there.  The 2-dimensional system is reduced to a
// univariate by modular resultants, roots are certified by interval Newton
// (univariate) and Krawczyk (bivariate), and the lines missed by the chart
// (those through (1:0:0)) are picked up by exact one-parameter sweeps.
// Sections with a node get their six node bitangents from the exact pencil
// of lines through the node, where the restricted quartic drops to a
// quadratic whose discriminant cuts out the solutions.

namespace tconic::planeq {

namespace {

const std::vector<std::string> L12{"l1", "l2"};

using u64 = std::uint64_t;

// ---- modular bivariate resultant ----------------------------------------

u64 addm(u64 a, u64 b, u64 p) { u64 s = a + b; if (s >= p || s < a) s -= p; return s; }
u64 subm(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulm(u64 a, u64 b, u64 p) { return (u64)((__uint128_t)a * b % p); }
u64 powm(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) { if (e & 1) r = mulm(r, a, p); a = mulm(a, a, p); e >>= 1; }
    return r;
}
u64 invm(u64 a, u64 p) { return powm(a % p, p - 2, p); }

const std::vector<u64>& prime_pool() {
    static const std::vector<u64> primes = [] {
        std::vector<u64> out;
        u64 cand = (1ULL << 62) - 57;
        while (out.size() < 512) {
            Int c((unsigned long)cand);
            if (mpz_probab_prime_p(c.get_mpz_t(), 30)) out.push_back(cand);
            cand -= 2;
        }
        return out;
    }();
    return primes;
}

// dense bivariate over F_p: coeffs[i][j] multiplies l1^i l2^j
struct PolyMod {
    std::vector<std::vector<u64>> c;
    int d1, d2;
};

PolyMod reduce_poly(const QPolyN& f, u64 p) {
    PolyMod out;
    out.d1 = std::max(f.degree_in(0), 0);
    out.d2 = std::max(f.degree_in(1), 0);
    out.c.assign(size_t(out.d1) + 1, std::vector<u64>(size_t(out.d2) + 1, 0));
    Int ip((unsigned long)p);
    for (auto& [e, coef] : f.terms) {
        Int num = coef.get_num() % ip;
        if (sgn(num) < 0) num += ip;
        Int den = coef.get_den() % ip;
        u64 v = mulm(num.get_ui(), invm(den.get_ui(), p), p);
        out.c[size_t(e[0])][size_t(e[1])] = addm(out.c[size_t(e[0])][size_t(e[1])], v, p);
    }
    return out;
}

// evaluate at l1 = x: dense vector in l2
std::vector<u64> eval_l1(const PolyMod& f, u64 x, u64 p) {
    std::vector<u64> out(size_t(f.d2) + 1, 0);
    for (int j = 0; j <= f.d2; ++j) {
        u64 acc = 0;
        for (int i = f.d1; i >= 0; --i) acc = addm(mulm(acc, x, p), f.c[size_t(i)][size_t(j)], p);
        out[size_t(j)] = acc;
    }
    return out;
}

// determinant over F_p by Gaussian elimination
u64 det_mod(std::vector<std::vector<u64>> m, u64 p) {
    size_t n = m.size();
    u64 det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) { std::swap(m[piv], m[c]); det = p - det; if (det == p) det = 0; }
        det = mulm(det, m[c][c], p);
        u64 inv = invm(m[c][c], p);
        for (size_t r = c + 1; r < n; ++r) {
            if (m[r][c] == 0) continue;
            u64 f = mulm(m[r][c], inv, p);
            for (size_t k = c; k < n; ++k)
                m[r][k] = subm(m[r][k], mulm(f, m[c][k], p), p);
        }
    }
    return det;
}

// Sylvester determinant of two padded l2-coefficient vectors over F_p
u64 sylvester_mod(const std::vector<u64>& f, int df, const std::vector<u64>& g, int dg, u64 p) {
    size_t n = size_t(df + dg);
    std::vector<std::vector<u64>> m(n, std::vector<u64>(n, 0));
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k)
            m[size_t(r)][size_t(r + df - k)] = f[size_t(k)];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k)
            m[size_t(dg + r)][size_t(r + dg - k)] = g[size_t(k)];
    return det_mod(std::move(m), p);
}

// interpolate a univariate over F_p from values at x = 0..deg
std::vector<u64> interp_mod(const std::vector<u64>& xs, const std::vector<u64>& ys, u64 p) {
    size_t n = xs.size();
    std::vector<u64> dd(ys);
    // Newton divided differences
    for (size_t k = 1; k < n; ++k)
        for (size_t i = n - 1; i >= k; --i) {
            u64 num = subm(dd[i], dd[i - 1], p);
            u64 den = subm(xs[i], xs[i - k], p);
            dd[i] = mulm(num, invm(den, p), p);
            if (i == k) break;
        }
    std::vector<u64> poly{dd[n - 1]};
    for (size_t k = n - 1; k-- > 0;) {
        std::vector<u64> np(poly.size() + 1, 0);
        for (size_t i = 0; i < poly.size(); ++i) {
            np[i + 1] = addm(np[i + 1], poly[i], p);
            np[i] = subm(np[i], mulm(poly[i], xs[k], p), p);
        }
        np[0] = addm(np[0], dd[k], p);
        poly = std::move(np);
    }
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    return poly;
}

// Res_{l2}(f, g) over Q as an integer polynomial in l1, by CRT over primes
// with per-prime evaluation/interpolation.  Degrees are formal (padded
// Sylvester), so specialization is always consistent.
ZPoly resultant_l2(const QPolyN& f, const QPolyN& g) {
    int df = std::max(f.degree_in(1), 0), dg = std::max(g.degree_in(1), 0);
    if (df == 0 && dg == 0) return ZPoly::constant(Int(1));
    int dbound = std::max(f.degree_in(0), 0) * dg + std::max(g.degree_in(0), 0) * df;
    size_t npts = size_t(dbound) + 1;

    std::vector<Int> crt;
    Int modulus(1);
    int stable = 0;
    const auto& primes = prime_pool();
    int actual_deg = -2;
    for (u64 p : primes) {
        PolyMod fm = reduce_poly(f, p), gm = reduce_poly(g, p);
        std::vector<u64> xs(npts), ys(npts);
        for (size_t i = 0; i < npts; ++i) {
            xs[i] = u64(i);
            ys[i] = sylvester_mod(eval_l1(fm, xs[i], p), df, eval_l1(gm, xs[i], p), dg, p);
        }
        std::vector<u64> rm = interp_mod(xs, ys, p);
        int dm = int(rm.size()) - 1;
        if (actual_deg == -2) actual_deg = dm;
        else if (dm > actual_deg) { // previous primes were unlucky
            actual_deg = dm;
            crt.clear();
            modulus = 1;
            stable = 0;
        } else if (dm < actual_deg) {
            continue;   // unlucky prime
        }
        rm.resize(size_t(std::max(actual_deg, 0)) + 1, 0);
        if (crt.empty()) crt.assign(rm.size(), Int(0));
        Int ip((unsigned long)p);
        Int new_mod = modulus * ip;
        bool changed = false;
        for (size_t i = 0; i < crt.size(); ++i) {
            Int cur = crt[i] % modulus;
            if (sgn(cur) < 0) cur += modulus;
            Int mm = modulus % ip;
            Int diff = (Int((unsigned long)rm[i]) - cur) % ip;
            if (sgn(diff) < 0) diff += ip;
            Int minv;
            mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), ip.get_mpz_t());
            Int t = (diff * minv) % ip;
            Int x = cur + modulus * t;
            if (x * 2 > new_mod) x -= new_mod;
            if (x != crt[i]) changed = true;
            crt[i] = x;
        }
        modulus = new_mod;
        stable = changed ? 0 : stable + 1;
        if (stable >= 2) break;
    }
    if (stable < 2) throw std::runtime_error("modular resultant did not stabilize");
    return ZPoly(std::vector<Int>(crt));
}

// ---- chart data -----------------------------------------------------------

struct ChartSystem {
    std::array<QPolyN, 5> coef;        // A..E in Q[l1, l2]
    std::vector<QPolyN> elim;          // seven pullbacks
    std::vector<QPolyN> dl1, dl2;      // their partials
};

ChartSystem build_chart0(const QPolyN& q) {
    ChartSystem cs;
    std::vector<std::string> vars{"l1", "l2", "s", "t"};
    std::vector<QPolyN> img(3, QPolyN(vars));
    // z0 = l1 s + l2 t, z1 = s, z2 = t
    {
        QPolyN e(vars);
        e.add_term({1, 0, 1, 0}, Rat(1));
        e.add_term({0, 1, 0, 1}, Rat(1));
        img[0] = e;
    }
    img[1] = QPolyN::variable(vars, 2);
    img[2] = QPolyN::variable(vars, 3);
    QPolyN r = q.compose(img);
    for (int i = 0; i <= 4; ++i) cs.coef[size_t(i)] = QPolyN(L12);
    for (auto& [e, c] : r.terms) {
        int tdeg = e[3];
        if (e[2] + e[3] != 4) throw std::logic_error("chart restriction degree mismatch");
        cs.coef[size_t(tdeg)].add_term({e[0], e[1]}, c);
    }
    // pull the eliminants back
    std::vector<QPolyN> imgs;
    for (int i = 0; i < 5; ++i) imgs.push_back(cs.coef[size_t(i)]);
    for (const auto& el : square_locus_eliminants()) {
        QPolyN pulled = el.compose(imgs);
        cs.elim.push_back(normalized(pulled));
    }
    for (auto& pl : cs.elim) {
        cs.dl1.push_back(pl.partial(0));
        cs.dl2.push_back(pl.partial(1));
    }
    return cs;
}

// binary quartic coefficients of q restricted to s*P0 + t*P1, intervals
std::array<CIv, 5> restrict_quartic_civ(const QPolyN& q, const std::array<CIv, 3>& P0,
                                        const std::array<CIv, 3>& P1, mpfr_prec_t prec) {
    std::array<CIv, 5> out{CIv::exact(0, prec), CIv::exact(0, prec), CIv::exact(0, prec),
                           CIv::exact(0, prec), CIv::exact(0, prec)};
    for (auto& [e, c] : q.terms) {
        std::vector<CIv> acc{to_civ(c, prec)};
        for (size_t v = 0; v < 3; ++v)
            for (int k = 0; k < e[v]; ++k) {
                std::vector<CIv> nxt(acc.size() + 1, CIv::exact(0, prec));
                for (size_t i = 0; i < acc.size(); ++i) {
                    nxt[i] = add(nxt[i], mul(acc[i], P0[v]));
                    nxt[i + 1] = add(nxt[i + 1], mul(acc[i], P1[v]));
                }
                acc = std::move(nxt);
            }
        for (size_t i = 0; i < acc.size(); ++i) out[i] = add(out[i], acc[i]);
    }
    return out;
}

std::array<Rat, 5> restrict_quartic_exact(const QPolyN& q, const std::array<Rat, 3>& P0,
                                          const std::array<Rat, 3>& P1) {
    std::vector<std::pair<Rat, Rat>> img;
    for (size_t v = 0; v < 3; ++v) img.emplace_back(P0[v], P1[v]);
    QBin b = restrict_to_param<Rat>(q, img);
    return {b.coeffs[0], b.coeffs[1], b.coeffs[2], b.coeffs[3], b.coeffs[4]};
}

// witness W (interval binary quadratic) with W^2 = the given quartic values;
// returns false when no branch is certified (degenerate ends)
bool witness_from_coeffs(const std::array<CIv, 5>& v, mpfr_prec_t prec,
                         std::array<CIv, 3>& W) {
    CIv two = CIv::exact(2, prec);
    if (v[0].excludes_zero()) {
        CIv alpha = sqrt_civ(v[0], prec);
        CIv beta = div(v[1], mul(two, alpha));
        CIv gamma = div(sub(v[2], mul(beta, beta)), mul(two, alpha));
        if (sub(v[3], mul(two, mul(beta, gamma))).excludes_zero()) return false;
        if (sub(v[4], mul(gamma, gamma)).excludes_zero()) return false;
        W = {alpha, beta, gamma};
        return true;
    }
    if (v[4].excludes_zero()) {
        CIv gamma = sqrt_civ(v[4], prec);
        CIv beta = div(v[3], mul(two, gamma));
        CIv alpha = div(sub(v[2], mul(beta, beta)), mul(two, gamma));
        if (sub(v[1], mul(two, mul(alpha, beta))).excludes_zero()) return false;
        if (sub(v[0], mul(alpha, alpha)).excludes_zero()) return false;
        W = {alpha, beta, gamma};
        return true;
    }
    return false;
}

// exact witness: values = d * (s^2 + b1 s t + c1 t^2)^2 scaled; returns
// (d, w~) with w~ rational, or nothing when the quartic is not a square
// times a scalar
std::optional<std::pair<Rat, QBin>> witness_exact_from(const std::array<Rat, 5>& v) {
    const Rat &A = v[0], &B = v[1], &C = v[2], &D = v[3], &E = v[4];
    if (sgn(A) != 0) {
        Rat b1 = B / (A * 2);
        Rat c1 = (C / A - b1 * b1) / 2;
        if (D != A * 2 * b1 * c1) return std::nullopt;
        if (E != A * c1 * c1) return std::nullopt;
        return std::pair<Rat, QBin>{A, QBin(2, {Rat(1), b1, c1})};
    }
    if (sgn(E) != 0) {
        Rat b1 = D / (E * 2);
        Rat a1 = (C / E - b1 * b1) / 2;
        if (B != E * 2 * a1 * b1) return std::nullopt;
        if (A != E * a1 * a1) return std::nullopt;
        return std::pair<Rat, QBin>{E, QBin(2, {a1, b1, Rat(1)})};
    }
    // A = E = 0: the quartic is s t (B s^2 + C s t + D t^2); a square scalar
    // multiple requires B = D = 0
    if (sgn(B) == 0 && sgn(D) == 0) {
        if (sgn(C) == 0) return std::nullopt;   // zero form: line inside the quartic
        return std::pair<Rat, QBin>{C, QBin(2, {Rat(0), Rat(1), Rat(0)})};
    }
    return std::nullopt;
}

// ---- Krawczyk certification for the 2x2 eliminant pair ---------------------

bool krawczyk2(const QPolyN& f, const QPolyN& g,
               const QPolyN& fl1, const QPolyN& fl2,
               const QPolyN& gl1, const QPolyN& gl2,
               CIv& X1, CIv& X2, mpfr_prec_t prec, int rounds) {
    bool proven = false;
    for (int round = 0; round < rounds; ++round) {
        std::vector<CIv> X{X1, X2};
        CIv m1{RIv{X1.re.mid(), X1.re.mid()}, RIv{X1.im.mid(), X1.im.mid()}};
        CIv m2{RIv{X2.re.mid(), X2.re.mid()}, RIv{X2.im.mid(), X2.im.mid()}};
        std::vector<CIv> M{m1, m2};
        CIv F1 = eval_civ(f, M, prec), F2 = eval_civ(g, M, prec);
        CIv J11 = eval_civ(fl1, X, prec), J12 = eval_civ(fl2, X, prec);
        CIv J21 = eval_civ(gl1, X, prec), J22 = eval_civ(gl2, X, prec);
        // midpoint Jacobian inverse
        auto midc = [&](const CIv& c) {
            return CIv{RIv{c.re.mid(), c.re.mid()}, RIv{c.im.mid(), c.im.mid()}};
        };
        CIv a = midc(J11), b = midc(J12), c = midc(J21), d = midc(J22);
        CIv det = sub(mul(a, d), mul(b, c));
        if (!det.excludes_zero()) return false;
        CIv Y11 = div(d, det), Y12 = div(neg(b), det);
        CIv Y21 = div(neg(c), det), Y22 = div(a, det);
        // K = m - Y F(m) + (I - Y J)(X - m)
        CIv D1 = sub(X1, m1), D2 = sub(X2, m2);
        CIv I11 = sub(CIv::exact(1, prec), add(mul(Y11, J11), mul(Y12, J21)));
        CIv I12 = neg(add(mul(Y11, J12), mul(Y12, J22)));
        CIv I21 = neg(add(mul(Y21, J11), mul(Y22, J21)));
        CIv I22 = sub(CIv::exact(1, prec), add(mul(Y21, J12), mul(Y22, J22)));
        CIv K1 = add(sub(m1, add(mul(Y11, F1), mul(Y12, F2))), add(mul(I11, D1), mul(I12, D2)));
        CIv K2 = add(sub(m2, add(mul(Y21, F1), mul(Y22, F2))), add(mul(I21, D1), mul(I22, D2)));
        if (K1.subset_interior(X1) && K2.subset_interior(X2)) proven = true;
        // contract
        try {
            CIv N1 = intersect(K1, X1), N2 = intersect(K2, X2);
            bool shrunk = N1.width_d() < X1.width_d() * 0.9 || N2.width_d() < X2.width_d() * 0.9;
            X1 = N1;
            X2 = N2;
            if (proven && !shrunk) return true;
        } catch (const std::domain_error&) {
            return false;   // empty intersection: no root in the box
        }
    }
    return proven;
}

// ---- candidate assembly ---------------------------------------------------

int pivot_of(const std::array<CIv, 3>& u) {
    int piv = 0;
    double best = -1;
    for (int i = 0; i < 3; ++i) {
        double m = mag_d(u[size_t(i)]);
        if (m > best + 1e-30) { best = m; piv = i; }
    }
    return piv;
}

Bitangent make_interval_bt(const QPolyN& q, const std::array<CIv, 3>& cov,
                           const std::array<CIv, 3>& P0, const std::array<CIv, 3>& P1,
                           mpfr_prec_t prec) {
    Bitangent bt;
    bt.exact = false;
    bt.pivot = pivot_of(cov);
    CIv piv = cov[size_t(bt.pivot)];
    for (int i = 0; i < 3; ++i) bt.line[size_t(i)] = div(cov[size_t(i)], piv);
    bt.param[0] = P0;
    bt.param[1] = P1;
    auto vals = restrict_quartic_civ(q, P0, P1, prec);
    std::array<CIv, 3> W;
    if (!witness_from_coeffs(vals, prec, W)) {
        // shear the parameterization: P0' = P0 + k P1
        bool done = false;
        for (long k = 1; k <= 4 && !done; ++k) {
            std::array<CIv, 3> P0s;
            CIv kk = CIv::exact(k, prec);
            for (size_t i = 0; i < 3; ++i) P0s[i] = add(P0[i], mul(kk, P1[i]));
            auto v2 = restrict_quartic_civ(q, P0s, P1, prec);
            if (witness_from_coeffs(v2, prec, W)) {
                bt.param[0] = P0s;
                done = true;
            }
        }
        if (!done) throw std::domain_error("witness construction failed (refine)");
    }
    bt.witness = W;
    return bt;
}

Bitangent make_exact_bt(const QPolyN& q, const std::array<Rat, 3>& cov,
                        const std::array<Rat, 3>& P0, const std::array<Rat, 3>& P1,
                        mpfr_prec_t prec) {
    Bitangent bt;
    bt.exact = true;
    // pivot: largest magnitude, ties to the smallest index
    {
        Rat best(-1);
        for (int i = 0; i < 3; ++i) {
            Rat m = abs(cov[size_t(i)]);
            if (m > best) { best = m; bt.pivot = i; }
        }
    }
    Rat piv = cov[size_t(bt.pivot)];
    for (int i = 0; i < 3; ++i) bt.line_exact[size_t(i)] = cov[size_t(i)] / piv;
    for (int i = 0; i < 3; ++i) bt.line[size_t(i)] = to_civ(bt.line_exact[size_t(i)], prec);
    bt.param_exact[0] = P0;
    bt.param_exact[1] = P1;
    auto try_params = [&](const std::array<Rat, 3>& A, const std::array<Rat, 3>& B) {
        auto vals = restrict_quartic_exact(q, A, B);
        return witness_exact_from(vals);
    };
    auto w = try_params(P0, P1);
    for (long k = 1; k <= 4 && !w; ++k) {
        std::array<Rat, 3> P0s;
        for (size_t i = 0; i < 3; ++i) P0s[i] = P0[i] + Rat(k) * P1[i];
        w = try_params(P0s, P1);
        if (w) bt.param_exact[0] = P0s;
    }
    if (!w) throw std::logic_error("exact witness construction failed");
    bt.wit_scale_exact = w->first;
    bt.wit_exact = w->second;
    for (size_t c = 0; c < 2; ++c)
        for (size_t i = 0; i < 3; ++i)
            bt.param[c][i] = to_civ(bt.param_exact[c][i], prec);
    return bt;
}

// upgrade an interval candidate to an exact one when its covector
// reconstructs to small rationals that verify exactly
bool try_upgrade_to_exact(Bitangent& bt, const QPolyN& q, mpfr_prec_t prec) {
    if (bt.exact) return false;
    std::array<Rat, 3> u;
    for (size_t i = 0; i < 3; ++i) {
        const CIv& c = bt.line[i];
        if (!c.im.contains_zero()) return false;
        auto v = small_rational_in(c.re);
        if (!v) return false;
        // the reconstruction must be tight: require containment both ways
        if (!c.re.contains(*v)) return false;
        u[i] = *v;
    }
    if (sgn(u[size_t(bt.pivot)]) == 0) return false;
    // exact parameterization from the pivot coordinate
    size_t piv = size_t(bt.pivot);
    size_t a = (piv + 1) % 3, b = (piv + 2) % 3;
    std::array<Rat, 3> P0{Rat(0), Rat(0), Rat(0)}, P1{Rat(0), Rat(0), Rat(0)};
    P0[a] = Rat(1);
    P0[piv] = -u[a] / u[piv];
    P1[b] = Rat(1);
    P1[piv] = -u[b] / u[piv];
    auto vals = restrict_quartic_exact(q, P0, P1);
    if (!witness_exact_from(vals)) return false;
    Bitangent up = make_exact_bt(q, u, P0, P1, prec);
    up.through_node = bt.through_node;
    up.fiber_multiplicity = bt.fiber_multiplicity;
    bt = std::move(up);
    return true;
}

// are two candidate lines certainly different?
bool certainly_distinct(const Bitangent& a, const Bitangent& b, mpfr_prec_t prec) {
    if (a.exact && b.exact) return !(a.line_exact == b.line_exact) || a.pivot != b.pivot;
    auto get = [&](const Bitangent& t, size_t i) {
        return t.exact ? to_civ(t.line_exact[i], prec) : t.line[i];
    };
    // cross product excludes zero in some component
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        CIv c = sub(mul(get(a, size_t(i)), get(b, size_t(j))),
                    mul(get(a, size_t(j)), get(b, size_t(i))));
        if (c.excludes_zero()) return true;
    }
    return false;
}

} // namespace

int BitangentList::multiplicity_total() const {
    int t = 0;
    for (auto& b : list) t += b.fiber_multiplicity;
    return t;
}

namespace {

std::vector<Bitangent> solve_once(const PlaneQuartic& pq, mpfr_prec_t prec, int attempt) {
    const QPolyN& q = pq.q;
    const bool nodal = pq.kind == SectionKind::OneNode;
    std::vector<Bitangent> found;

    auto add_candidate = [&](Bitangent bt) {
        for (auto& other : found)
            if (!certainly_distinct(bt, other, prec)) return;   // duplicate
        found.push_back(std::move(bt));
    };

    // -- node pencil: lines through the node (node sections only) ----------
    if (nodal) {
        const auto& n = pq.node;
        size_t npiv = 0;
        Rat best(-1);
        for (size_t i = 0; i < 3; ++i)
            if (abs(n[i]) > best) { best = abs(n[i]); npiv = i; }
        std::array<std::array<Rat, 3>, 2> ucov{};   // two covectors through n
        size_t k = 0;
        for (size_t i = 0; i < 3; ++i) {
            if (i == npiv) continue;
            std::array<Rat, 3> u{Rat(0), Rat(0), Rat(0)};
            u[i] = Rat(1);
            u[npiv] = -n[i] / n[npiv];
            ucov[k++] = u;
        }
        // pencil u' + tau u''; direction point d(tau) = (u' + tau u'') x n
        std::vector<std::string> TST{"tau", "s", "t"};
        auto cross = [](const std::array<QPolyN, 3>& u, const std::array<Rat, 3>& v,
                        const std::vector<std::string>& vars) {
            std::array<QPolyN, 3> r{QPolyN(vars), QPolyN(vars), QPolyN(vars)};
            for (int i = 0; i < 3; ++i) {
                int a = (i + 1) % 3, b = (i + 2) % 3;
                r[size_t(i)] = u[size_t(a)] * QPolyN::constant(vars, v[size_t(b)])
                             - u[size_t(b)] * QPolyN::constant(vars, v[size_t(a)]);
            }
            return r;
        };
        std::array<QPolyN, 3> ut{QPolyN(TST), QPolyN(TST), QPolyN(TST)};
        for (int i = 0; i < 3; ++i) {
            ut[size_t(i)] = QPolyN::constant(TST, ucov[0][size_t(i)])
                          + QPolyN::variable(TST, 0) * QPolyN::constant(TST, ucov[1][size_t(i)]);
        }
        std::array<QPolyN, 3> d = cross(ut, n, TST);
        // q(s n + t d(tau)) = t^2 h(tau; s, t)
        std::vector<QPolyN> img(3, QPolyN(TST));
        for (size_t i = 0; i < 3; ++i)
            img[i] = QPolyN::constant(TST, n[i]) * QPolyN::variable(TST, 1)
                   + d[i] * QPolyN::variable(TST, 2);
        QPolyN restr = q.compose(img);
        QPolyN h2(TST), h1(TST), h0(TST);
        for (auto& [e, c] : restr.terms) {
            if (e[2] < 2) throw std::logic_error("node is not a double point of the section");
            if (e[1] + e[2] != 4) throw std::logic_error("pencil restriction degree");
            if (e[2] == 2) h2.add_term({e[0], 0, 0}, c);
            else if (e[2] == 3) h1.add_term({e[0], 0, 0}, c);
            else if (e[2] == 4) h0.add_term({e[0], 0, 0}, c);
        }
        QPolyN discp = h1 * h1 - h2 * h0 * Rat(4);
        // the line u'' itself (tau = infinity in the pencil)
        {
            std::array<Rat, 3> d_inf;
            for (int i = 0; i < 3; ++i) {
                int a = (i + 1) % 3, b = (i + 2) % 3;
                d_inf[size_t(i)] = ucov[1][size_t(a)] * n[size_t(b)]
                                 - ucov[1][size_t(b)] * n[size_t(a)];
            }
            auto vals = restrict_quartic_exact(q, n, d_inf);
            if (witness_exact_from(vals)) {
                Bitangent bt = make_exact_bt(q, ucov[1], n, d_inf, prec);
                bt.through_node = true;
                bt.fiber_multiplicity = 2;
                add_candidate(std::move(bt));
            }
        }
        // roots of disc(tau) are the bitangents through the node
        std::vector<Rat> dense;
        int dd = discp.degree_in(0);
        dense.assign(size_t(std::max(dd, 0)) + 1, Rat(0));
        for (auto& [e, c] : discp.terms) dense[size_t(e[0])] += c;
        ZPoly dz = to_zpoly(QPoly{std::move(dense)});
        if (dz.degree() < 1) throw std::domain_error("degenerate node pencil");
        ZPoly sf = squarefree_part(dz);
        auto roots = all_roots_certified(sf, prec, -int(prec));
        for (auto& r : roots) {
            // covector and parameterization at this tau
            if (r.is_rational) {
                std::array<Rat, 3> u, dpt;
                for (size_t i = 0; i < 3; ++i) {
                    u[i] = ucov[0][i] + r.value * ucov[1][i];
                    // d evaluated at tau
                    QPolyN di = d[i];
                    Rat acc(0);
                    for (auto& [e, c] : di.terms) {
                        Rat t = c;
                        for (int kk = 0; kk < e[0]; ++kk) t *= r.value;
                        acc += t;
                    }
                    dpt[i] = acc;
                }
                Bitangent bt = make_exact_bt(q, u, n, dpt, prec);
                bt.through_node = true;
                bt.fiber_multiplicity = 2;
                add_candidate(std::move(bt));
            } else {
                std::array<CIv, 3> u, dpt, npt;
                for (size_t i = 0; i < 3; ++i) {
                    u[i] = add(to_civ(ucov[0][i], prec), mul(r.box, to_civ(ucov[1][i], prec)));
                    CIv acc = CIv::exact(0, prec);
                    for (auto& [e, c] : d[i].terms) {
                        CIv t = to_civ(c, prec);
                        for (int kk = 0; kk < e[0]; ++kk) t = mul(t, r.box);
                        acc = add(acc, t);
                    }
                    dpt[i] = acc;
                    npt[i] = to_civ(n[i], prec);
                }
                Bitangent bt = make_interval_bt(q, u, npt, dpt, prec);
                bt.through_node = true;
                bt.fiber_multiplicity = 2;
                add_candidate(std::move(bt));
            }
        }
        if (int(found.size()) != 6)
            throw std::domain_error("node pencil: expected six bitangents through the node (refine)");
    }

    ChartSystem cs = build_chart0(q);

    // -- the main 2-dimensional solve in chart 0 ---------------------------
    // choose eliminant index pairs; rotate on retries
    std::vector<std::pair<int, int>> pair_pool{{0, 3}, {3, 6}, {1, 5}, {2, 4}, {0, 6}, {1, 4}};
    std::rotate(pair_pool.begin(), pair_pool.begin() + attempt % 3, pair_pool.end());

    std::vector<ZPoly> res_list;
    for (size_t pi = 0; pi < pair_pool.size() && res_list.size() < 3; ++pi) {
        auto [i, j] = pair_pool[pi];
        ZPoly r = resultant_l2(cs.elim[size_t(i)], cs.elim[size_t(j)]);
        if (r.degree() <= 0) continue;   // degenerate pair
        res_list.push_back(std::move(r));
    }
    if (res_list.size() < 2) throw std::runtime_error("all resultant pairs degenerate");
    ZPoly R = res_list[0];
    for (size_t i = 1; i < res_list.size(); ++i) R = gcd_z(R, res_list[i]);
    if (getenv("TCONIC_DEBUG")) {
        fprintf(stderr, "[solver] resultant degrees:");
        for (auto& rr : res_list) fprintf(stderr, " %d", rr.degree());
        fprintf(stderr, ", gcd degree %d, squarefree %d\n", R.degree(),
                squarefree_part(R).degree());
    }
    if (R.degree() < 1) {
        // no chart-0 bitangents at all; fall through to the sweeps
    } else {
        ZPoly Rsf = squarefree_part(R);
        auto l1roots = all_roots_certified(Rsf, prec, -int(prec));
        if (getenv("TCONIC_DEBUG")) {
            int nr = 0, nq = 0;
            for (auto& rt : l1roots) { nr += rt.real; nq += rt.is_rational; }
            fprintf(stderr, "[solver] %zu l1 roots, %d real, %d rational\n",
                    l1roots.size(), nr, nq);
            for (auto& rt : l1roots)
                if (rt.real)
                    fprintf(stderr, "[solver]   real root ~%.9f rational=%d\n",
                            rt.box.re.mid().to_double(), int(rt.is_rational));
        }

        for (auto& rt : l1roots) {
            // back-substitution: roots in l2 of a well-conditioned specialization
            // pick an eliminant whose leading l2-coefficient is nonzero here
            std::vector<MPC> l2cands;
            for (int ei = 0; ei < 7 && l2cands.empty(); ++ei) {
                const QPolyN& pe = cs.elim[size_t(ei)];
                int d2 = pe.degree_in(1);
                std::vector<CIv> spec(size_t(d2) + 1, CIv::exact(0, prec));
                for (int kdeg = 0; kdeg <= d2; ++kdeg) {
                    QPolyN ck = pe.coeff_of(1, kdeg);
                    // evaluate at l1 box
                    CIv acc = CIv::exact(0, prec);
                    for (auto& [e, c] : ck.terms) {
                        CIv t = to_civ(c, prec);
                        for (int kk = 0; kk < e[0]; ++kk) t = mul(t, rt.box);
                        acc = add(acc, t);
                    }
                    spec[size_t(kdeg)] = acc;
                }
                // effective degree at the midpoint
                while (!spec.empty() && !spec.back().excludes_zero() &&
                       mag_d(spec.back()) < 1e-300)
                    spec.pop_back();
                if (spec.size() <= 1 || !spec.back().excludes_zero()) continue;
                std::vector<MPC> mid(spec.size());
                for (size_t i2 = 0; i2 < spec.size(); ++i2)
                    mid[i2] = MPC{spec[i2].re.mid(), spec[i2].im.mid()};
                l2cands = aberth(mid, prec);
            }
            for (auto& z2 : l2cands) {
                // exact attempt first
                if (rt.is_rational) {
                    double im = std::abs(z2.im.to_double());
                    double sc = std::max(1.0, abs_d(z2));
                    if (im < 1e-10 * sc) {
                        RIv guess{z2.re, z2.re};
                        guess = widen(guess, 10);
                        if (auto l2r = small_rational_in(guess)) {
                            std::array<Rat, 5> vals;
                            bool allzero = true;
                            std::vector<Rat> pt{rt.value, *l2r};
                            for (auto& pe : cs.elim)
                                if (sgn(pe.eval(pt)) != 0) { allzero = false; break; }
                            if (allzero) {
                                for (int i5 = 0; i5 < 5; ++i5)
                                    vals[size_t(i5)] = cs.coef[size_t(i5)].eval(pt);
                                std::array<Rat, 3> cov{Rat(1), -rt.value, -*l2r};
                                std::array<Rat, 3> P0{rt.value, Rat(1), Rat(0)};
                                std::array<Rat, 3> P1{*l2r, Rat(0), Rat(1)};
                                add_candidate(make_exact_bt(q, cov, P0, P1, prec));
                                continue;
                            }
                        }
                    }
                }
                // interval route with Krawczyk certification
                double sc1 = std::max(1.0, mag_d(rt.box));
                double sc2 = std::max(1.0, abs_d(z2));
                CIv X1 = rt.box;
                CIv X2{RIv{z2.re, z2.re}, RIv{z2.im, z2.im}};
                auto inflate_abs = [&](CIv& X, double amount) {
                    BF dd(prec);
                    mpfr_set_d(dd.x, amount, MPFR_RNDU);
                    mpfr_sub(X.re.lo.x, X.re.lo.x, dd.x, MPFR_RNDD);
                    mpfr_add(X.re.hi.x, X.re.hi.x, dd.x, MPFR_RNDU);
                    mpfr_sub(X.im.lo.x, X.im.lo.x, dd.x, MPFR_RNDD);
                    mpfr_add(X.im.hi.x, X.im.hi.x, dd.x, MPFR_RNDU);
                };
                inflate_abs(X1, std::ldexp(sc1, -int(prec) / 3));
                inflate_abs(X2, std::ldexp(std::max(sc1, sc2), -int(prec) / 3));
                bool certified = false;
                for (auto [ia, ib] : pair_pool) {
                    CIv Y1 = X1, Y2 = X2;
                    if (krawczyk2(cs.elim[size_t(ia)], cs.elim[size_t(ib)],
                                  cs.dl1[size_t(ia)], cs.dl2[size_t(ia)],
                                  cs.dl1[size_t(ib)], cs.dl2[size_t(ib)],
                                  Y1, Y2, prec, 40)) {
                        X1 = Y1;
                        X2 = Y2;
                        certified = true;
                        break;
                    }
                }
                if (!certified) continue;   // spurious or singular (node) point
                // all seven eliminants must be consistent with zero
                bool consistent = true;
                std::vector<CIv> pt{X1, X2};
                for (auto& pe : cs.elim)
                    if (eval_civ(pe, pt, prec).excludes_zero()) { consistent = false; break; }
                if (!consistent) continue;
                std::array<CIv, 3> cov{CIv::exact(1, prec), neg(X1), neg(X2)};
                std::array<CIv, 3> P0{X1, CIv::exact(1, prec), CIv::exact(0, prec)};
                std::array<CIv, 3> P1{X2, CIv::exact(0, prec), CIv::exact(1, prec)};
                add_candidate(make_interval_bt(q, cov, P0, P1, prec));
            }
        }
    }

    // -- sweep: lines with zero z0-coefficient, u = (0 : 1 : -mu) ----------
    {
        // parameterize points as (s, mu t, t)
        std::vector<std::string> MST{"mu", "s", "t"};
        std::vector<QPolyN> img(3, QPolyN(MST));
        img[0] = QPolyN::variable(MST, 1);
        img[1] = QPolyN::variable(MST, 0) * QPolyN::variable(MST, 2);
        img[2] = QPolyN::variable(MST, 2);
        QPolyN restr = q.compose(img);
        std::array<QPolyN, 5> co;
        for (int i = 0; i <= 4; ++i) co[size_t(i)] = QPolyN(MST);
        for (auto& [e, c] : restr.terms)
            co[size_t(4 - e[1])].add_term({e[0], 0, 0}, c);
        // pull eliminants back to univariates in mu and take the exact gcd
        std::vector<QPolyN> imgs;
        for (int i = 0; i < 5; ++i) imgs.push_back(co[size_t(i)]);
        ZPoly g;
        bool first = true;
        bool all_zero = true;
        for (const auto& el : square_locus_eliminants()) {
            QPolyN pulled = el.compose(imgs);
            std::vector<Rat> dense(size_t(std::max(pulled.degree_in(0), 0)) + 1, Rat(0));
            for (auto& [e, c] : pulled.terms) dense[size_t(e[0])] += c;
            ZPoly pz = to_zpoly(QPoly{std::move(dense)});
            if (pz.is_zero()) continue;
            all_zero = false;
            g = first ? pz : gcd_z(g, pz);
            first = false;
            if (!first && g.degree() == 0) break;
        }
        if (all_zero) throw std::logic_error("sweep eliminants identically zero");
        if (g.degree() >= 1) {
            ZPoly sf = squarefree_part(g);
            auto roots = all_roots_certified(sf, prec, -int(prec));
            for (auto& r : roots) {
                if (r.is_rational) {
                    std::array<Rat, 3> cov{Rat(0), Rat(1), -r.value};
                    std::array<Rat, 3> P0{Rat(1), Rat(0), Rat(0)};
                    std::array<Rat, 3> P1{Rat(0), r.value, Rat(1)};
                    add_candidate(make_exact_bt(q, cov, P0, P1, prec));
                } else {
                    std::array<CIv, 3> cov{CIv::exact(0, prec), CIv::exact(1, prec), neg(r.box)};
                    std::array<CIv, 3> P0{CIv::exact(1, prec), CIv::exact(0, prec), CIv::exact(0, prec)};
                    std::array<CIv, 3> P1{CIv::exact(0, prec), r.box, CIv::exact(1, prec)};
                    add_candidate(make_interval_bt(q, cov, P0, P1, prec));
                }
            }
        }
    }

    // -- the single line not covered by the chart or the sweep: z2 = 0
    {
        std::array<Rat, 3> cov{Rat(0), Rat(0), Rat(1)};
        std::array<Rat, 3> P0{Rat(1), Rat(0), Rat(0)}, P1{Rat(0), Rat(1), Rat(0)};
        auto vals = restrict_quartic_exact(q, P0, P1);
        if (witness_exact_from(vals))
            add_candidate(make_exact_bt(q, cov, P0, P1, prec));
    }

    // upgrade interval candidates with small rational covectors
    for (auto& bt : found) try_upgrade_to_exact(bt, q, prec);

    // through-node flags for the chart candidates, node sections only
    if (nodal) {
        for (auto& bt : found) {
            if (bt.through_node) continue;   // set by the pencil already
            // u . n must exclude zero for every non-pencil candidate
            CIv dot = CIv::exact(0, prec);
            for (size_t i = 0; i < 3; ++i) {
                CIv ui = bt.exact ? to_civ(bt.line_exact[i], prec) : bt.line[i];
                dot = add(dot, mul(ui, to_civ(pq.node[i], prec)));
            }
            if (!dot.excludes_zero()) {
                if (bt.exact) {
                    Rat dx(0);
                    for (size_t i = 0; i < 3; ++i) dx += bt.line_exact[i] * pq.node[i];
                    if (sgn(dx) == 0)
                        throw std::domain_error("chart candidate passes through the node unexpectedly");
                } else {
                    throw std::domain_error("through-node test undecided (refine)");
                }
            }
        }
    }

    return found;
}

} // namespace

BitangentList bitangents(const PlaneQuartic& pq, mpfr_prec_t prec) {
    if (pq.kind == SectionKind::Degenerate)
        throw std::domain_error("bitangents of a degenerate section: " + pq.degenerate_reason);
    int expected = pq.kind == SectionKind::Smooth ? 28 : 22;
    std::string last_error = "unknown";
    mpfr_prec_t p = prec;
    for (int attempt = 0; attempt < 4; ++attempt, p *= 2) {
        try {
            auto found = solve_once(pq, p, attempt);
            if (int(found.size()) != expected) {
                last_error = "found " + std::to_string(found.size()) + " of " +
                             std::to_string(expected) + " bitangents";
                continue;
            }
            // canonical order: by pivot, then midpoint coordinates
            std::sort(found.begin(), found.end(), [](const Bitangent& x, const Bitangent& y) {
                if (x.pivot != y.pivot) return x.pivot < y.pivot;
                for (int i = 0; i < 3; ++i) {
                    double xr = x.line[size_t(i)].re.mid().to_double();
                    double yr = y.line[size_t(i)].re.mid().to_double();
                    if (std::abs(xr - yr) > 1e-18) return xr < yr;
                    double xi = x.line[size_t(i)].im.mid().to_double();
                    double yi = y.line[size_t(i)].im.mid().to_double();
                    if (std::abs(xi - yi) > 1e-18) return xi < yi;
                }
                return false;
            });
            BitangentList out;
            out.list = std::move(found);
            return out;
        } catch (const std::exception& e) {
            last_error = e.what();
        }
    }
    throw std::domain_error("bitangent certification failed at requested precision (retry with refinement): " + last_error);
}

} // namespace tconic::planeq
