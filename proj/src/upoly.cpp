#include "tconic/upoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <cassert>

namespace tconic {

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return ZPoly(std::move(r));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> r(std::max(a.c.size(), b.c.size()), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return ZPoly(std::move(r));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<Int> r(a.c.size() + b.c.size() - 1, Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r[i + j] += a.c[i] * b.c[j];
    }
    return ZPoly(std::move(r));
}

ZPoly mul_scalar(const ZPoly& a, const Int& k) {
    if (sgn(k) == 0) return ZPoly();
    ZPoly r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

ZPoly shift_up(const ZPoly& a, int k) {
    if (a.is_zero()) return a;
    std::vector<Int> r(a.c.size() + size_t(k), Int(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i + size_t(k)] = a.c[i];
    return ZPoly(std::move(r));
}

Int content(const ZPoly& a) {
    Int g = 0;
    for (const auto& x : a.c) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t()); }
    return g;
}

ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return a;
    Int g = content(a);
    if (sgn(a.lc()) < 0) g = -g;
    ZPoly r = a;
    for (auto& x : r.c) x /= g;
    return r;
}

ZPoly derivative(const ZPoly& a) {
    if (a.degree() < 1) return ZPoly();
    std::vector<Int> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * long(i);
    return ZPoly(std::move(r));
}

Rat eval(const ZPoly& a, const Rat& x) {
    Rat v(0);
    for (size_t i = a.c.size(); i-- > 0;) v = v * x + a.c[i];
    return v;
}

Int eval(const ZPoly& a, const Int& x) {
    Int v(0);
    for (size_t i = a.c.size(); i-- > 0;) v = v * x + a.c[i];
    return v;
}

ZPoly divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return ZPoly();
    if (a.degree() < b.degree()) throw std::domain_error("inexact polynomial division");
    std::vector<Int> rem = a.c;
    std::vector<Int> q(size_t(a.degree() - b.degree()) + 1, Int(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Int& top = rem[size_t(k + b.degree())];
        if (sgn(top) != 0) {
            Int t, r;
            mpz_tdiv_qr(t.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), b.lc().get_mpz_t());
            if (sgn(r) != 0) throw std::domain_error("inexact polynomial division");
            q[size_t(k)] = t;
            for (int i = 0; i <= b.degree(); ++i)
                rem[size_t(k + i)] -= t * b.c[size_t(i)];
        }
    }
    for (const auto& x : rem)
        if (sgn(x) != 0) throw std::domain_error("inexact polynomial division");
    return ZPoly(std::move(q));
}

bool divides(const ZPoly& b, const ZPoly& a) {
    try { (void)divide_exact(a, b); return true; }
    catch (const std::domain_error&) { return false; }
}

ZPoly pseudo_rem(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo_rem by zero");
    int da = a.degree(), db = b.degree();
    if (da < db) return a;
    std::vector<Int> r = a.c;
    const Int& lb = b.lc();
    for (int k = da - db; k >= 0; --k) {
        // multiply the remainder-so-far by lb and eliminate the top term
        Int top = r[size_t(k + db)];
        for (int i = 0; i < k + db; ++i) r[size_t(i)] *= lb;
        for (int i = 0; i < db; ++i) r[size_t(i + k)] -= top * b.c[size_t(i)];
        r[size_t(k + db)] = 0;
    }
    r.resize(size_t(db));
    return ZPoly(std::move(r));
}

// Subresultant PRS resultant (Cohen, Algorithm 3.3.7).
Int resultant(const ZPoly& a0, const ZPoly& b0) {
    if (a0.is_zero() || b0.is_zero()) return Int(0);
    ZPoly a = a0, b = b0;
    Int g(1), h(1), t(1);
    int s = 1;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) s = -s;
        std::swap(a, b);
    }
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        ZPoly r = pseudo_rem(a, b);
        if (r.is_zero()) {
            if (db == 0) break; // fall through to final formula with b constant
            return Int(0);
        }
        a = b;
        b = r;
        // divide by g*h^delta
        Int div = g;
        for (int i = 0; i < delta; ++i) div *= h;
        for (auto& x : b.c) {
            Int q, rr;
            mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), x.get_mpz_t(), div.get_mpz_t());
            assert(sgn(rr) == 0);
            x = q;
        }
        g = a.lc();
        // h = h^(1-delta) * g^delta
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            Int gn(1);
            for (int i = 0; i < delta; ++i) gn *= g;
            Int hd(1);
            for (int i = 0; i < delta - 1; ++i) hd *= h;
            h = gn / hd;
        }
        if (b.degree() == 0) break;
    }
    // now b is a nonzero constant; resultant = s * b^deg(a) / h^(deg(a)-1)
    int da = a.degree();
    Int num(1);
    for (int i = 0; i < da; ++i) num *= b.c[0];
    Int den(1);
    for (int i = 0; i < da - 1; ++i) den *= h;
    Int res = num / den;
    (void)t;
    return s < 0 ? Int(-res) : res;
}

// ---- modular gcd -----------------------------------------------------

namespace {

using u64 = std::uint64_t;

u64 addmod(u64 a, u64 b, u64 p) { u64 s = a + b; if (s >= p || s < a) s -= p; return s; }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((__uint128_t)a * b % p); }
u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) { if (e & 1) r = mulmod(r, a, p); a = mulmod(a, a, p); e >>= 1; }
    return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

std::vector<u64> reduce_mod(const ZPoly& a, u64 p) {
    std::vector<u64> r(a.c.size());
    Int ip((unsigned long)p);
    for (size_t i = 0; i < a.c.size(); ++i) {
        Int m = a.c[i] % ip;
        if (sgn(m) < 0) m += ip;
        r[i] = m.get_ui();
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<u64> gcd_mod(std::vector<u64> a, std::vector<u64> b, u64 p) {
    while (!b.empty()) {
        // a mod b
        u64 inv = invmod(b.back(), p);
        while (a.size() >= b.size()) {
            size_t k = a.size() - b.size();
            u64 t = mulmod(a.back(), inv, p);
            for (size_t i = 0; i < b.size(); ++i)
                a[k + i] = submod(a[k + i], mulmod(t, b[i], p), p);
            while (!a.empty() && a.back() == 0) a.pop_back();
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 inv = invmod(a.back(), p);
        for (auto& x : a) x = mulmod(x, inv, p);
    }
    return a;
}

const u64 kPrimes[] = {
    9223372036854775783ULL, 9223372036854775643ULL, 9223372036854775549ULL,
    9223372036854775507ULL, 9223372036854775433ULL, 9223372036854775421ULL,
    9223372036854775417ULL, 9223372036854775399ULL, 9223372036854775351ULL,
    9223372036854775337ULL,
};

} // namespace

ZPoly gcd_z(const ZPoly& a0, const ZPoly& b0) {
    if (a0.is_zero()) return primitive_part(b0);
    if (b0.is_zero()) return primitive_part(a0);
    ZPoly a = primitive_part(a0), b = primitive_part(b0);
    if (a.degree() < b.degree()) std::swap(a, b);

    // trial: candidate gcd from CRT over word-size primes, verified by division
    Int lc_g;
    mpz_gcd(lc_g.get_mpz_t(), a.lc().get_mpz_t(), b.lc().get_mpz_t());

    int best_deg = b.degree() + 1;
    std::vector<Int> crt;       // symmetric representatives
    Int modulus(1);
    size_t prime_idx = 0;
    int stable_rounds = 0;

    while (true) {
        if (prime_idx >= sizeof(kPrimes) / sizeof(kPrimes[0])) {
            // fall back to subresultant PRS gcd — unconditional but slower
            ZPoly x = a, y = b;
            while (!y.is_zero()) {
                ZPoly r = primitive_part(pseudo_rem(x, y));
                x = y;
                y = r;
            }
            return primitive_part(x);
        }
        u64 p = kPrimes[prime_idx++];
        Int ip((unsigned long)p);
        if (sgn(a.lc() % ip) == 0 || sgn(b.lc() % ip) == 0) continue; // bad prime
        auto g = gcd_mod(reduce_mod(a, p), reduce_mod(b, p), p);
        int dg = int(g.size()) - 1;
        if (dg == 0) return ZPoly::constant(Int(1));
        if (dg > best_deg) continue; // unlucky prime
        // scale so lc matches lc_g mod p
        {
            Int lgm = lc_g % ip;
            if (sgn(lgm) < 0) lgm += ip;
            u64 scale = lgm.get_ui();
            for (auto& x : g) x = mulmod(x, scale, p);
        }
        if (dg < best_deg) {
            best_deg = dg;
            crt.assign(size_t(dg) + 1, Int(0));
            modulus = 1;
            stable_rounds = 0;
        }
        // CRT combine into symmetric range
        std::vector<Int> next(crt.size());
        Int new_mod = modulus * ip;
        bool changed = false;
        for (size_t i = 0; i < crt.size(); ++i) {
            Int cur = crt[i] % modulus;
            if (sgn(cur) < 0) cur += modulus;
            Int target((unsigned long)g[i]);
            // x = cur + modulus * t with x == target (mod p)
            Int mm = modulus % ip;
            Int diff = (target - cur) % ip;
            if (sgn(diff) < 0) diff += ip;
            Int minv;
            mpz_invert(minv.get_mpz_t(), mm.get_mpz_t(), ip.get_mpz_t());
            Int t = (diff * minv) % ip;
            Int x = cur + modulus * t;
            // symmetric representative
            if (x * 2 > new_mod) x -= new_mod;
            next[i] = x;
            if (x != crt[i]) changed = true;
        }
        crt = next;
        modulus = new_mod;
        if (!changed) ++stable_rounds; else stable_rounds = 0;
        if (stable_rounds >= 1) {
            ZPoly cand{std::vector<Int>(crt)};
            cand = primitive_part(cand);
            if (!cand.is_zero() && divides(cand, a) && divides(cand, b))
                return cand;
        }
    }
}

ZPoly squarefree_part(const ZPoly& a) {
    if (a.degree() <= 0) return primitive_part(a);
    ZPoly g = gcd_z(a, derivative(a));
    if (g.degree() == 0) return primitive_part(a);
    return primitive_part(divide_exact(primitive_part(a), g));
}

std::vector<std::pair<ZPoly,int>> squarefree_decomposition(const ZPoly& a0) {
    std::vector<std::pair<ZPoly,int>> out;
    ZPoly a = primitive_part(a0);
    if (a.degree() <= 0) return out;
    // Yun's algorithm
    ZPoly ap = derivative(a);
    ZPoly g = gcd_z(a, ap);
    ZPoly w = divide_exact(a, g);
    ZPoly y = divide_exact(ap, g);
    int i = 1;
    while (w.degree() > 0) {
        ZPoly z = y - derivative(w);
        ZPoly f = gcd_z(w, z);
        if (f.degree() > 0) out.emplace_back(f, i);
        w = divide_exact(w, f);
        y = divide_exact(z, f);
        ++i;
    }
    return out;
}

// ---- Sturm -----------------------------------------------------------

namespace {

std::vector<ZPoly> sturm_chain(const ZPoly& a) {
    std::vector<ZPoly> chain;
    chain.push_back(primitive_part(a));
    chain.push_back(primitive_part(derivative(a)));
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const ZPoly& p = chain[chain.size() - 2];
        const ZPoly& q = chain.back();
        if (q.is_zero()) break;
        ZPoly r = pseudo_rem(p, q);
        if (r.is_zero()) break;
        // pseudo_rem scales by lc(q)^(delta+1); the chain needs -rem, so the
        // scaling sign matters.  Divide by the |content| only (positive), to
        // keep coefficient growth down without touching the sign.
        int delta = p.degree() - q.degree();
        Int mult(1);
        for (int i = 0; i <= delta; ++i) mult *= q.lc();
        Int cont = content(r);
        ZPoly next = r;
        for (auto& x : next.c) x /= cont;
        chain.push_back(mul_scalar(next, sgn(mult) < 0 ? Int(1) : Int(-1)));
    }
    return chain;
}

int sign_at(const ZPoly& p, const std::optional<Rat>& x, int at_infinity) {
    if (p.is_zero()) return 0;
    if (!x) {
        // sign at -inf (at_infinity=-1) or +inf (+1)
        int s = sgn(p.lc());
        if (at_infinity < 0 && (p.degree() & 1)) s = -s;
        return s;
    }
    return sgn(eval(p, *x));
}

int sign_changes(const std::vector<ZPoly>& chain, const std::optional<Rat>& x, int inf) {
    int changes = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x, inf);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

} // namespace

int sturm_count(const ZPoly& a, const std::optional<Rat>& lo, const std::optional<Rat>& hi) {
    ZPoly sf = squarefree_part(a);
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_chain(sf);
    int vlo = sign_changes(chain, lo, -1);
    int vhi = sign_changes(chain, hi, +1);
    return vlo - vhi;
}

int sturm_count(const ZPoly& a) { return sturm_count(a, std::nullopt, std::nullopt); }

// ---- Descartes isolation ----------------------------------------------

namespace {

// number of sign variations of coefficients
int variations(const std::vector<Int>& c) {
    int v = 0, prev = 0;
    for (const auto& x : c) {
        int s = sgn(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// p(x) -> p(x+1)
std::vector<Int> taylor_shift1(std::vector<Int> c) {
    int n = int(c.size()) - 1;
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j)
            c[size_t(j)] += c[size_t(j) + 1];
    return c;
}

// p(x) -> 2^deg * p(x/2)
std::vector<Int> scale_half(std::vector<Int> c) {
    int n = int(c.size()) - 1;
    for (int i = 0; i <= n; ++i) c[size_t(i)] <<= unsigned(n - i);
    return c;
}

// p(x) -> x^deg * p(1/x)
std::vector<Int> reverse_coeffs(std::vector<Int> c) {
    std::reverse(c.begin(), c.end());
    return c;
}

struct DescCtx {
    std::vector<RootInterval>* out;
    int target_log2;
};

// isolate roots of q in the open interval (lo, lo + 2^k) where q is the
// original polynomial mapped so its (0,1) roots correspond to that interval
void descartes01(const std::vector<Int>& c, const Rat& lo, int k, DescCtx& ctx) {
    // roots of c in (0,1) <-> roots of original in (lo, lo+2^k)
    std::vector<Int> t = taylor_shift1(reverse_coeffs(c));
    int v = variations(t);
    if (v == 0) return;
    Rat width = Rat(Int(1) << 30, 1); // placeholder, recomputed below
    if (v == 1 && k <= ctx.target_log2) {
        Rat w = k >= 0 ? Rat(Int(1) << unsigned(k)) : Rat(Int(1), Int(1) << unsigned(-k));
        ctx.out->push_back({lo, lo + w, 1});
        return;
    }
    (void)width;
    // split at midpoint
    std::vector<Int> left = scale_half(c);          // maps (0,1/2) -> (0,1)
    std::vector<Int> right = taylor_shift1(left);    // maps (1/2,1) -> (0,1)
    Rat half = k - 1 >= 0 ? Rat(Int(1) << unsigned(k - 1)) : Rat(Int(1), Int(1) << unsigned(-(k - 1)));
    // check midpoint root
    Rat mid = lo + half;
    // p(mid) == 0 iff right's value at 0 is 0
    if (right.size() > 0 && sgn(right[0]) == 0) {
        ctx.out->push_back({mid, mid, 1});
    }
    descartes01(left, lo, k - 1, ctx);
    descartes01(right, mid, k - 1, ctx);
}

} // namespace

std::vector<RootInterval> isolate_real_roots_squarefree(const ZPoly& a, int target_width_log2) {
    std::vector<RootInterval> out;
    if (a.degree() <= 0) return out;
    ZPoly p = primitive_part(a);

    // root bound: 1 + max |c_i| / |lc|  <= 2^B
    Int m(0);
    for (const auto& x : p.c) { Int ax = abs(x); if (ax > m) m = ax; }
    Int lc = abs(p.lc());
    Int bound = m / lc + 2;
    int B = 1;
    while ((Int(1) << unsigned(B)) < bound) ++B;

    // handle root at 0
    ZPoly q = p;
    if (sgn(q.c[0]) == 0) {
        out.push_back({Rat(0), Rat(0), 1});
        size_t z = 0;
        while (z < q.c.size() && sgn(q.c[z]) == 0) ++z;
        q = ZPoly(std::vector<Int>(q.c.begin() + long(z), q.c.end()));
    }

    DescCtx ctx{&out, target_width_log2};
    // positive roots: map (0, 2^B) to (0,1) via x -> 2^B x
    {
        std::vector<Int> c = q.c;
        int n = int(c.size()) - 1;
        for (int i = 0; i <= n; ++i) {
            c[size_t(i)] <<= unsigned(i * B);
        }
        descartes01(c, Rat(0), B, ctx);
    }
    // negative roots: p(-x)
    {
        std::vector<Int> c = q.c;
        for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
        int n = int(c.size()) - 1;
        for (int i = 0; i <= n; ++i) c[size_t(i)] <<= unsigned(i * B);
        std::vector<RootInterval> neg;
        DescCtx nctx{&neg, target_width_log2};
        descartes01(c, Rat(0), B, nctx);
        for (auto& r : neg) out.push_back({-r.hi, -r.lo, 1});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) {
        return x.lo < y.lo;
    });
    return out;
}

std::vector<RootInterval> isolate_real_roots(const ZPoly& a, int target_width_log2) {
    if (a.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    std::vector<RootInterval> out;
    for (auto& [f, mult] : squarefree_decomposition(a)) {
        for (auto iv : isolate_real_roots_squarefree(f, target_width_log2)) {
            iv.multiplicity = mult;
            out.push_back(iv);
        }
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) {
        return x.lo < y.lo;
    });
    return out;
}

RootInterval refine_root(const ZPoly& p, RootInterval iv, int width_log2) {
    if (iv.exact()) return iv;
    Rat target = width_log2 >= 0 ? Rat(Int(1) << unsigned(width_log2))
                                 : Rat(Int(1), Int(1) << unsigned(-width_log2));
    int slo = sgn(eval(p, iv.lo));
    if (slo == 0) return {iv.lo, iv.lo, iv.multiplicity};
    while (iv.hi - iv.lo > target) {
        Rat mid = (iv.lo + iv.hi) / 2;
        int sm = sgn(eval(p, mid));
        if (sm == 0) return {mid, mid, iv.multiplicity};
        if (sm == slo) iv.lo = mid; else iv.hi = mid;
    }
    return iv;
}

ZPoly interpolate_z(const std::vector<Int>& xs, const std::vector<Int>& ys) {
    size_t n = xs.size();
    if (ys.size() != n || n == 0) throw std::invalid_argument("interpolate_z: bad inputs");
    // Newton divided differences over Q
    std::vector<Rat> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = Rat(ys[i]);
    std::vector<Rat> coef(n);
    coef[0] = dd[0];
    for (size_t k = 1; k < n; ++k) {
        for (size_t i = n - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rat(xs[i] - xs[i - k]);
            if (i == k) break;
        }
        coef[k] = dd[k];
    }
    // expand newton form
    std::vector<Rat> poly{coef[n - 1]};
    for (size_t k = n - 1; k-- > 0;) {
        // poly = poly*(x - xs[k]) + coef[k]
        std::vector<Rat> np(poly.size() + 1, Rat(0));
        for (size_t i = 0; i < poly.size(); ++i) {
            np[i + 1] += poly[i];
            np[i] -= poly[i] * Rat(xs[k]);
        }
        np[0] += coef[k];
        poly = std::move(np);
    }
    std::vector<Int> zc(poly.size());
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i].get_den() != 1) throw std::domain_error("interpolate_z: non-integer result");
        zc[i] = poly[i].get_num();
    }
    return ZPoly(std::move(zc));
}

ZPoly to_zpoly(const QPoly& q) {
    if (q.is_zero()) return ZPoly();
    Int den(1);
    for (const auto& r : q.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    std::vector<Int> c(q.c.size());
    for (size_t i = 0; i < q.c.size(); ++i) {
        Rat v = q.c[i] * Rat(den);
        c[i] = v.get_num();
    }
    return primitive_part(ZPoly(std::move(c)));
}

} // namespace tconic
