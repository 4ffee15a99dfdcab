#include "tconic/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace tconic {

CIv eval_poly(const std::vector<CIv>& c, const CIv& z) {
    if (c.empty()) throw std::invalid_argument("eval_poly: empty");
    CIv acc = c.back();
    for (size_t i = c.size() - 1; i-- > 0;) acc = add(mul(acc, z), c[i]);
    return acc;
}

std::vector<CIv> derive_poly(const std::vector<CIv>& c) {
    if (c.size() <= 1) return {CIv::exact(0, c.empty() ? 64 : c[0].prec())};
    std::vector<CIv> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i)
        d[i - 1] = mul(c[i], CIv::exact(long(i), c[i].prec()));
    return d;
}

std::optional<CIv> newton_step(const std::vector<CIv>& c, const std::vector<CIv>& dc, const CIv& box) {
    CIv dp = eval_poly(dc, box);
    if (!dp.excludes_zero()) return std::nullopt;
    mpfr_prec_t p = box.prec();
    CIv m{RIv{box.re.mid(), box.re.mid()}, RIv{box.im.mid(), box.im.mid()}};
    (void)p;
    CIv pm = eval_poly(c, m);
    CIv n = sub(m, div(pm, dp));
    try {
        return intersect(n, box);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

std::optional<CIv> certify_root(const std::vector<CIv>& c, const MPC& z0, int target_width_log2) {
    mpfr_prec_t p = std::max<mpfr_prec_t>(z0.re.prec(), c.empty() ? 64 : c[0].prec());
    std::vector<CIv> dc = derive_poly(c);
    // initial box: inflate around z0 progressively until Newton contracts
    for (int infl = -int(p) + 8; infl <= -4; infl += 6) {
        CIv box{RIv{z0.re, z0.re}, RIv{z0.im, z0.im}};
        box = widen(box, 0);   // give it nonzero width at ulp scale
        // widen to absolute scale 2^infl relative to |z0|+1
        double scale = std::max(1.0, abs_d(z0));
        BF d(p);
        mpfr_set_d(d.x, std::ldexp(scale, infl), MPFR_RNDU);
        mpfr_sub(box.re.lo.x, box.re.lo.x, d.x, MPFR_RNDD);
        mpfr_add(box.re.hi.x, box.re.hi.x, d.x, MPFR_RNDU);
        mpfr_sub(box.im.lo.x, box.im.lo.x, d.x, MPFR_RNDD);
        mpfr_add(box.im.hi.x, box.im.hi.x, d.x, MPFR_RNDU);

        CIv dp = eval_poly(dc, box);
        if (!dp.excludes_zero()) continue;
        CIv m{RIv{box.re.mid(), box.re.mid()}, RIv{box.im.mid(), box.im.mid()}};
        CIv pm = eval_poly(c, m);
        CIv n = sub(m, div(pm, dp));
        if (!n.subset_interior(box)) continue;
        // contraction proven: unique root in box; now shrink
        CIv cur = n;
        for (int it = 0; it < 200; ++it) {
            if (cur.width_d() <= std::ldexp(1.0, target_width_log2)) break;
            auto nx = newton_step(c, dc, cur);
            if (!nx) break;
            if (nx->width_d() >= cur.width_d() * 0.9) { cur = *nx; break; }
            cur = *nx;
        }
        return cur;
    }
    return std::nullopt;
}

std::vector<CIv> roots_of_interval_poly(const std::vector<CIv>& c, int expected_deg,
                                        int target_width_log2) {
    if (int(c.size()) < expected_deg + 1) throw std::invalid_argument("roots_of_interval_poly: degree");
    for (size_t i = size_t(expected_deg) + 1; i < c.size(); ++i)
        if (c[i].excludes_zero())
            throw std::domain_error("roots_of_interval_poly: degree exceeds expected");
    std::vector<CIv> cc(c.begin(), c.begin() + expected_deg + 1);
    if (!cc.back().excludes_zero())
        throw std::domain_error("roots_of_interval_poly: leading coefficient not certified nonzero");
    if (expected_deg == 0) return {};
    mpfr_prec_t p = cc[0].prec();
    std::vector<MPC> mid(cc.size());
    for (size_t i = 0; i < cc.size(); ++i) mid[i] = MPC{cc[i].re.mid(), cc[i].im.mid()};
    std::vector<MPC> guesses = aberth(mid, p);
    std::vector<CIv> out;
    for (auto& z : guesses) {
        auto box = certify_root(cc, z, target_width_log2);
        if (!box) throw std::domain_error("roots_of_interval_poly: certification failed");
        out.push_back(*box);
    }
    // pairwise disjoint => all expected_deg roots found
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (!out[i].disjoint(out[j]))
                throw std::domain_error("roots_of_interval_poly: boxes overlap (refine)");
    return out;
}

std::vector<MPC> aberth(const std::vector<MPC>& coeffs, mpfr_prec_t prec, int max_iter) {
    int n = int(coeffs.size()) - 1;
    while (n >= 0 && abs_d(coeffs[size_t(n)]) == 0.0) --n;
    if (n <= 0) return {};
    std::vector<MPC> c(coeffs.begin(), coeffs.begin() + n + 1);
    // derivative
    std::vector<MPC> dc(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        MPC k = MPC::zero(prec);
        mpfr_set_si(k.re.x, i, MPFR_RNDN);
        dc[size_t(i - 1)] = mul(c[size_t(i)], k);
    }
    auto horner = [&](const std::vector<MPC>& poly, const MPC& z) {
        MPC acc = poly.back();
        for (size_t i = poly.size() - 1; i-- > 0;) acc = add(mul(acc, z), poly[i]);
        return acc;
    };
    // Cauchy-style radius
    double lc = abs_d(c[size_t(n)]);
    double r = 0;
    for (int i = 0; i < n; ++i) r = std::max(r, abs_d(c[size_t(i)]) / lc);
    r = 1.0 + r;
    if (!std::isfinite(r) || r <= 0) r = 2.0;
    std::vector<MPC> z(size_t(n), MPC::zero(prec));
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * (double(k) + 0.35) / double(n) + 0.4;
        double rad = r * (0.6 + 0.4 * double(k % 5) / 4.0);
        mpfr_set_d(z[size_t(k)].re.x, rad * std::cos(th), MPFR_RNDN);
        mpfr_set_d(z[size_t(k)].im.x, rad * std::sin(th), MPFR_RNDN);
    }
    double tol = std::ldexp(1.0, -int(prec) + 6);
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0;
        for (int k = 0; k < n; ++k) {
            MPC pz = horner(c, z[size_t(k)]);
            MPC dz = horner(dc, z[size_t(k)]);
            if (abs_d(dz) == 0.0) {
                mpfr_add_d(z[size_t(k)].re.x, z[size_t(k)].re.x, 1e-3 * r, MPFR_RNDN);
                worst = 1;
                continue;
            }
            MPC w = div(pz, dz);
            MPC s = MPC::zero(prec);
            bool collide = false;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                MPC d = sub(z[size_t(k)], z[size_t(j)]);
                if (abs_d(d) == 0.0) { collide = true; break; }
                MPC one = MPC::zero(prec);
                mpfr_set_si(one.re.x, 1, MPFR_RNDN);
                s = add(s, div(one, d));
            }
            if (collide) {
                mpfr_add_d(z[size_t(k)].im.x, z[size_t(k)].im.x, 1e-3 * r + 1e-6, MPFR_RNDN);
                worst = 1;
                continue;
            }
            MPC one = MPC::zero(prec);
            mpfr_set_si(one.re.x, 1, MPFR_RNDN);
            MPC denom = sub(one, mul(w, s));
            MPC corr = abs_d(denom) == 0.0 ? w : div(w, denom);
            z[size_t(k)] = sub(z[size_t(k)], corr);
            double rel = abs_d(corr) / std::max(1.0, abs_d(z[size_t(k)]));
            worst = std::max(worst, rel);
        }
        if (worst < tol) break;
    }
    return z;
}

namespace {

std::vector<CIv> zpoly_civ(const ZPoly& f, mpfr_prec_t p) {
    std::vector<CIv> c(f.c.size());
    for (size_t i = 0; i < f.c.size(); ++i) c[i] = to_civ(Rat(f.c[i]), p);
    return c;
}

} // namespace

std::vector<CertRoot> all_roots_certified(const ZPoly& sf0, mpfr_prec_t prec,
                                          int target_width_log2) {
    ZPoly sf = primitive_part(sf0);
    int deg = sf.degree();
    if (deg <= 0) return {};

    // coefficient size estimate to route small instances through the exact
    // real-isolation path (cheap, yields exact rational roots directly)
    size_t maxbits = 0;
    for (const auto& c : sf.c) maxbits = std::max(maxbits, mpz_sizeinbase(c.get_mpz_t(), 2));
    bool small_instance = deg <= 40 && maxbits <= 2048;

    std::vector<CertRoot> out;
    mpfr_prec_t p = prec;
    for (int attempt = 0; attempt < 5; ++attempt, p *= 2) {
        if (attempt >= 3) small_instance = false;   // near-axis pair fallback
        out.clear();
        std::vector<CIv> c = zpoly_civ(sf, p);

        int nreal_exact = -1;
        if (small_instance) {
            auto reals = isolate_real_roots_squarefree(sf, target_width_log2);
            nreal_exact = int(reals.size());
            for (auto& iv : reals) {
                CertRoot r;
                r.real = true;
                RootInterval ri = refine_root(sf, iv, target_width_log2);
                if (ri.exact()) {
                    r.is_rational = true;
                    r.value = ri.lo;
                } else if (auto v = small_rational_in(RIv::from_rats(ri.lo, ri.hi, p))) {
                    if (sgn(eval(sf, *v)) == 0) {
                        r.is_rational = true;
                        r.value = *v;
                    }
                }
                if (r.is_rational)
                    r.box = CIv{RIv::from_rat(r.value, p), RIv::exact(0, p)};
                else
                    r.box = CIv{RIv::from_rats(ri.lo, ri.hi, p), RIv::exact(0, p)};
                out.push_back(std::move(r));
            }
            if (nreal_exact == deg) return out;
        }

        std::vector<MPC> mid(c.size());
        for (size_t i = 0; i < c.size(); ++i) mid[i] = MPC{c[i].re.mid(), c[i].im.mid()};
        std::vector<MPC> zs = aberth(mid, p, 400 + 200 * attempt);
        if (int(zs.size()) != deg) continue;

        std::vector<CIv> dc = derive_poly(c);
        bool ok = true;
        for (auto& z : zs) {
            double im = std::abs(z.im.to_double());
            double sc = std::max(1.0, abs_d(z));
            if (small_instance && im < 1e-12 * sc) continue;   // covered exactly above
            auto box = certify_root(c, z, target_width_log2);
            if (!box) { ok = false; break; }
            CertRoot r;
            r.box = *box;
            if (box->im.excludes_zero()) {
                r.real = false;
            } else {
                // the box straddles the real axis; the root is real exactly
                // when Newton also contracts on the conjugate-symmetric hull
                CIv sym = hull(*box, box->conj());
                auto n = newton_step(c, dc, sym);
                r.real = n && n->subset_interior(sym);
                if (r.real) {
                    if (auto v = small_rational_in(box->re)) {
                        if (sgn(eval(sf, *v)) == 0) {
                            r.is_rational = true;
                            r.value = *v;
                            r.box = CIv{RIv::from_rat(*v, p), RIv::exact(0, p)};
                        }
                    }
                }
            }
            out.push_back(std::move(r));
        }
        if (!ok) continue;
        if (int(out.size()) != deg) continue;
        // pairwise disjoint: the full root set is accounted for
        bool disjoint = true;
        for (size_t i = 0; i < out.size() && disjoint; ++i)
            for (size_t j = i + 1; j < out.size() && disjoint; ++j)
                if (!out[i].box.disjoint(out[j].box)) disjoint = false;
        if (!disjoint) continue;
        return out;
    }
    throw std::domain_error("all_roots_certified: could not certify the full root set");
}

CIv to_civ(const Rat& r, mpfr_prec_t p) { return CIv::from_rat(r, p); }
CIv to_civ(const GaussRat& z, mpfr_prec_t p) { return CIv::from_gauss(z, p); }

std::vector<CIv> to_civ(const std::vector<Rat>& v, mpfr_prec_t p) {
    std::vector<CIv> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_civ(v[i], p);
    return out;
}

CIv eval_civ(const ZPoly& f, const CIv& z, mpfr_prec_t p) {
    if (f.is_zero()) return CIv::exact(0, p);
    CIv acc = to_civ(Rat(f.c.back()), p);
    for (size_t i = f.c.size() - 1; i-- > 0;) acc = add(mul(acc, z), to_civ(Rat(f.c[i]), p));
    return acc;
}

namespace {

template <class F>
CIv eval_civ_impl(const MultiPoly<F>& f, const std::vector<CIv>& x, mpfr_prec_t p) {
    if (x.size() != f.nvars()) throw std::invalid_argument("eval_civ: arity");
    // power tables
    std::vector<std::vector<CIv>> pw(x.size());
    for (size_t v = 0; v < x.size(); ++v) {
        int d = f.degree_in(v);
        pw[v].resize(size_t(std::max(d, 0)) + 1);
        pw[v][0] = CIv::exact(1, p);
        for (int k = 1; k <= d; ++k) pw[v][size_t(k)] = mul(pw[v][size_t(k - 1)], x[v]);
    }
    CIv acc = CIv::exact(0, p);
    for (auto& [e, c] : f.terms) {
        CIv t = to_civ(c, p);
        for (size_t v = 0; v < e.size(); ++v)
            if (e[v] > 0) t = mul(t, pw[v][size_t(e[v])]);
        acc = add(acc, t);
    }
    return acc;
}

} // namespace

CIv eval_civ(const MultiPoly<Rat>& f, const std::vector<CIv>& x, mpfr_prec_t p) {
    return eval_civ_impl(f, x, p);
}
CIv eval_civ(const MultiPoly<GaussRat>& f, const std::vector<CIv>& x, mpfr_prec_t p) {
    return eval_civ_impl(f, x, p);
}

CIv sqrt_civ(const CIv& x, mpfr_prec_t prec) {
    if (!x.excludes_zero()) throw std::domain_error("sqrt_civ of a zero-containing box");
    MPC m{x.re.mid(), x.im.mid()};
    double a = m.re.to_double(), b = m.im.to_double();
    double r0 = std::sqrt(std::hypot(a, b));
    double th = std::atan2(b, a) / 2;
    MPC w0 = MPC::zero(prec);
    mpfr_set_d(w0.re.x, r0 * std::cos(th), MPFR_RNDN);
    mpfr_set_d(w0.im.x, r0 * std::sin(th), MPFR_RNDN);
    // polish in floating point first (the double seed may be far off for
    // very large/small magnitudes)
    for (int it = 0; it < 64; ++it) {
        MPC w2 = mul(w0, w0);
        MPC num = sub(w2, m);
        MPC den = add(w0, w0);
        if (abs_d(den) == 0.0) break;
        MPC corr = div(num, den);
        w0 = sub(w0, corr);
        if (abs_d(corr) <= std::ldexp(std::max(1.0, abs_d(w0)), -int(prec) + 4)) break;
    }
    std::vector<CIv> poly{neg(x), CIv::exact(0, prec), CIv::exact(1, prec)};
    auto box = certify_root(poly, w0, -int(prec) + 8);
    if (!box) throw std::domain_error("interval square root failed (refine)");
    return *box;
}

std::optional<Rat> small_rational_in(const RIv& iv) {
    // Stern-Brocot / continued fraction walk toward the simplest rational in
    // [lo, hi]; bounded number of steps keeps heights small.
    Rat lo = iv.lo.to_rat(), hi = iv.hi.to_rat();
    if (lo > hi) return std::nullopt;
    // integer in range?
    Int fl;
    mpz_cdiv_q(fl.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    if (Rat(fl) <= hi) return Rat(fl);
    bool negate = false;
    if (sgn(hi) < 0) {
        std::swap(lo, hi);
        lo = -lo;
        hi = -hi;
        negate = true;
    }
    if (sgn(lo) <= 0) return std::nullopt; // straddles or touches 0 handled above
    // continued fraction of the interval
    Rat a = lo, b = hi;
    std::vector<Int> cf;
    for (int step = 0; step < 64; ++step) {
        Int qa = a.get_num() / a.get_den();
        Int qb = b.get_num() / b.get_den();
        if (qa != qb) {
            // simplest value has integer part min(qa,qb)+1 ... actually
            // floor(min)+1 <= max, so integer part q = min+1 works as a/1
            Int q = (qa < qb ? qa : qb) + 1;
            cf.push_back(q);
            break;
        }
        cf.push_back(qa);
        Rat fa = a - Rat(qa), fb = b - Rat(qb);
        if (sgn(fa) == 0 || sgn(fb) == 0) break;
        a = Rat(1) / fb;
        b = Rat(1) / fa;
    }
    // reconstruct
    Rat v(cf.back());
    for (size_t i = cf.size() - 1; i-- > 0;) v = Rat(cf[i]) + Rat(1) / v;
    if (negate) v = -v;
    Rat l0 = iv.lo.to_rat(), h0 = iv.hi.to_rat();
    if (v >= l0 && v <= h0) return v;
    return std::nullopt;
}

} // namespace tconic
