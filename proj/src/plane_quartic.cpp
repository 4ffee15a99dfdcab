#include "tconic/plane_quartic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace tconic::planeq {

namespace {

const std::vector<std::string> Z3{"z0", "z1", "z2"};

QPolyN zvar(size_t i) { return QPolyN::variable(Z3, i); }

// determinant of a small matrix of polynomials, by minor expansion with
// memoization on column masks
QPolyN poly_det(const std::vector<std::vector<QPolyN>>& m) {
    size_t n = m.size();
    std::map<unsigned, QPolyN> memo;
    std::function<QPolyN(size_t, unsigned)> rec = [&](size_t row, unsigned used) -> QPolyN {
        if (row == n) return QPolyN::constant(m[0][0].vars, Rat(1));
        auto it = memo.find(used);
        if (it != memo.end()) return it->second;
        QPolyN acc(m[0][0].vars);
        int sign = 1;
        for (size_t c = 0; c < n; ++c) {
            if (used & (1u << c)) continue;
            if (!m[row][c].is_zero_poly()) {
                QPolyN sub = rec(row + 1, used | (1u << c));
                QPolyN term = m[row][c] * sub;
                acc = sign > 0 ? acc + term : acc - term;
            }
            sign = -sign;
        }
        memo.emplace(used, acc);
        return acc;
    };
    return rec(0, 0);
}

// Sylvester resultant of two polynomials in z2 whose coefficients are
// polynomials in (z0, z1); degrees are formal (padded)
QPolyN resultant_z2(const QPolyN& f, int df, const QPolyN& g, int dg) {
    std::vector<QPolyN> fc(size_t(df) + 1, QPolyN(Z3)), gc(size_t(dg) + 1, QPolyN(Z3));
    for (int k = 0; k <= df; ++k) fc[size_t(k)] = f.coeff_of(2, k);
    for (int k = 0; k <= dg; ++k) gc[size_t(k)] = g.coeff_of(2, k);
    size_t n = size_t(df + dg);
    std::vector<std::vector<QPolyN>> m(n, std::vector<QPolyN>(n, QPolyN(Z3)));
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k)
            m[size_t(r)][size_t(r + df - k)] = fc[size_t(k)];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k)
            m[size_t(dg + r)][size_t(r + dg - k)] = gc[size_t(k)];
    return poly_det(m);
}

// collect a 2-variable-homogeneous polynomial (z2-free) into a binary form
QBin to_qbin(const QPolyN& f, int deg) {
    QBin b = QBin::zero(deg);
    for (auto& [e, c] : f.terms) {
        if (e[2] != 0) throw std::logic_error("to_qbin: z2 present");
        if (e[0] + e[1] != deg) throw std::logic_error("to_qbin: degree mismatch");
        b.coeffs[size_t(e[1])] += c;
    }
    return b;
}

// exact coordinate shear (z0, z1, z2) -> (z0 + a z2, z1 + b z2, z2)
QPolyN shear_poly(const QPolyN& f, long a, long b) {
    std::vector<QPolyN> img{
        zvar(0) + QPolyN::constant(Z3, Rat(a)) * zvar(2),
        zvar(1) + QPolyN::constant(Z3, Rat(b)) * zvar(2),
        zvar(2)};
    return f.compose(img);
}

// move a chosen point to (0:0:1): columns are a deterministic completion
QPolyN recenter(const QPolyN& f, const std::array<Rat, 3>& n) {
    size_t piv = 0;
    for (size_t i = 0; i < 3; ++i)
        if (sgn(n[i]) != 0) piv = i;
    std::vector<std::array<Rat, 3>> cols;
    for (size_t i = 0; i < 3; ++i) {
        if (i == piv) continue;
        std::array<Rat, 3> e{Rat(0), Rat(0), Rat(0)};
        e[i] = Rat(1);
        cols.push_back(e);
    }
    cols.push_back(n);
    std::vector<QPolyN> img(3, QPolyN(Z3));
    for (size_t r = 0; r < 3; ++r) {
        QPolyN row(Z3);
        for (size_t c = 0; c < 3; ++c)
            row = row + QPolyN::constant(Z3, cols[c][r]) * zvar(c);
        img[r] = row;
    }
    return f.compose(img);
}

// certified: the three partials have no common projective zero away from the
// chart center (and none at the center either, unless allow_center is set —
// used after moving a known node to (0:0:1) to rule out further singular
// points)
bool certify_no_singular_point(const QPolyN& q, bool allow_center = false) {
    QPolyN q0 = q.partial(0), q1 = q.partial(1), q2 = q.partial(2);
    auto at001 = [&](const QPolyN& f) { return f.eval({Rat(0), Rat(0), Rat(1)}); };
    int stripped_successes = 0;
    for (long k = 0; k <= 6; ++k) {
        QPolyN s0 = shear_poly(q0, k, k * k);
        QPolyN s1 = shear_poly(q1, k, k * k);
        QPolyN s2 = shear_poly(q2, k, k * k);
        bool center_singular =
            sgn(at001(s0)) == 0 && sgn(at001(s1)) == 0 && sgn(at001(s2)) == 0;
        if (center_singular && !(allow_center && k == 0))
            return false;   // a singular point sits at the chart center
        QPolyN r01 = resultant_z2(s0, 3, s1, 3);
        QPolyN r02 = resultant_z2(s0, 3, s2, 3);
        if (r01.is_zero_poly() || r02.is_zero_poly()) continue;
        QBin b01 = to_qbin(r01, 9), b02 = to_qbin(r02, 9);
        if (b01.is_zero_form() || b02.is_zero_form()) continue;
        QBin g = gcd_bin(b01, b02);
        if (!allow_center) {
            if (g.deg == 0) return true;
            continue;
        }
        // node-at-center mode: for k = 0 the node does not project, so a
        // constant gcd is decisive; for k > 0 the node projects to
        // (-k : -k^2) ~ root of (k z0 - z1) and must be stripped first.
        // A second singular point can share the node's projection for at
        // most one k, so two stripped successes (or one at k = 0) certify
        // that the node is the only singular point.
        if (k == 0) {
            if (g.deg == 0) return true;
            continue;
        }
        QBin nl = QBin(1, {Rat(k), Rat(-1)});
        QBin cur = g;
        while (cur.deg > 0) {
            auto [quot, rem] = divmod_s(cur, nl);
            if (!rem.is_zero_form()) break;
            cur = quot;
        }
        if (cur.deg == 0 || cur.is_zero_form()) {
            if (++stripped_successes >= 2) return true;
        }
    }
    return false;
}

} // namespace

PlaneSpec PlaneSpec::from_coeffs(const std::array<Rat, 4>& y) {
    bool allzero = true;
    for (auto& v : y)
        if (sgn(v) != 0) allzero = false;
    if (allzero) throw std::invalid_argument("zero plane");
    PlaneSpec p;
    p.y = y;
    size_t piv = 0;
    while (sgn(y[piv]) == 0) ++piv;
    size_t k = 0;
    for (size_t i = 0; i < 4; ++i) {
        if (i == piv) continue;
        std::array<Rat, 4> b{Rat(0), Rat(0), Rat(0), Rat(0)};
        b[i] = Rat(1);
        b[piv] = -y[i] / y[piv];
        p.basis[k++] = b;
    }
    return p;
}

PlaneQuartic section(const quartic13::QuarticSurface& S, const PlaneSpec& plane) {
    PlaneQuartic out;
    out.plane = plane;
    // pull back F through the basis
    std::vector<QPolyN> img(4, QPolyN(Z3));
    for (size_t r = 0; r < 4; ++r) {
        QPolyN row(Z3);
        for (size_t c = 0; c < 3; ++c)
            row = row + QPolyN::constant(Z3, plane.basis[c][r]) * zvar(c);
        img[r] = row;
    }
    out.q = S.F.compose(img);

    // non-reduced sections: the plane is one of the E_i = 0
    for (int i = 0; i < 4; ++i) {
        std::array<Rat, 4> e{};
        for (int v = 0; v < 4; ++v) {
            Expvec ev(4, 0);
            ev[size_t(v)] = 1;
            auto it = S.E[size_t(i)].terms.find(ev);
            e[size_t(v)] = it == S.E[size_t(i)].terms.end() ? Rat(0) : it->second;
        }
        // proportional to the plane?
        bool prop = true;
        Rat ratio;
        bool have = false;
        for (int v = 0; v < 4; ++v) {
            if (sgn(plane.y[size_t(v)]) == 0 && sgn(e[size_t(v)]) == 0) continue;
            if (sgn(plane.y[size_t(v)]) == 0 || sgn(e[size_t(v)]) == 0) { prop = false; break; }
            Rat r = e[size_t(v)] / plane.y[size_t(v)];
            if (!have) { ratio = r; have = true; }
            else if (r != ratio) { prop = false; break; }
        }
        if (prop) {
            out.kind = SectionKind::Degenerate;
            out.degenerate_reason = "non-reduced section";
            return out;
        }
    }

    if (certify_no_singular_point(out.q)) {
        out.kind = SectionKind::Smooth;
        return out;
    }

    // known candidate: the image of the real node when the plane contains it
    if (sgn(plane.y[3]) == 0) {
        // solve basis * z = (0,0,0,1)
        // basis columns are the three spanning vectors
        std::array<Rat, 3> z{Rat(0), Rat(0), Rat(0)};
        bool solved = false;
        // each basis vector has a distinguished unit coordinate; use them
        // to solve the overdetermined system by elimination
        std::vector<std::vector<Rat>> Mext(4, std::vector<Rat>(4, Rat(0)));
        for (size_t r = 0; r < 4; ++r) {
            for (size_t c = 0; c < 3; ++c) Mext[r][c] = plane.basis[c][r];
            Mext[r][3] = r == 3 ? Rat(1) : Rat(0);
        }
        // gaussian elimination
        size_t row = 0;
        std::vector<int> piv_col(3, -1);
        for (size_t c = 0; c < 3 && row < 4; ++c) {
            size_t p = row;
            while (p < 4 && sgn(Mext[p][c]) == 0) ++p;
            if (p == 4) continue;
            std::swap(Mext[p], Mext[row]);
            Rat d = Mext[row][c];
            for (size_t x = 0; x < 4; ++x) Mext[row][x] /= d;
            for (size_t rr = 0; rr < 4; ++rr) {
                if (rr == row) continue;
                Rat f = Mext[rr][c];
                if (sgn(f) == 0) continue;
                for (size_t x = 0; x < 4; ++x) Mext[rr][x] -= f * Mext[row][x];
            }
            piv_col[c] = int(row);
            ++row;
        }
        bool consistent = true;
        for (size_t r = row; r < 4; ++r)
            if (sgn(Mext[r][3]) != 0) consistent = false;
        if (consistent && piv_col[0] >= 0 && piv_col[1] >= 0 && piv_col[2] >= 0) {
            for (size_t c = 0; c < 3; ++c) z[c] = Mext[size_t(piv_col[c])][3];
            solved = true;
        }
        if (solved) {
            std::vector<Rat> zv(z.begin(), z.end());
            bool singular = true;
            for (size_t v = 0; v < 3; ++v)
                if (sgn(out.q.partial(v).eval(zv)) != 0) singular = false;
            if (singular) {
                // ordinary node: ternary Hessian has rank 2 there
                std::vector<std::vector<Rat>> H(3, std::vector<Rat>(3));
                for (size_t i = 0; i < 3; ++i)
                    for (size_t j = 0; j < 3; ++j)
                        H[i][j] = out.q.partial(i).partial(j).eval(zv);
                int rank = 0;
                {
                    auto m = H;
                    size_t r = 0;
                    for (size_t c = 0; c < 3 && r < 3; ++c) {
                        size_t p = r;
                        while (p < 3 && sgn(m[p][c]) == 0) ++p;
                        if (p == 3) continue;
                        std::swap(m[p], m[r]);
                        for (size_t rr = 0; rr < 3; ++rr) {
                            if (rr == r || sgn(m[rr][c]) == 0) continue;
                            Rat f = m[rr][c] / m[r][c];
                            for (size_t x = 0; x < 3; ++x) m[rr][x] -= f * m[r][x];
                        }
                        ++r;
                        ++rank;
                    }
                }
                if (rank == 2) {
                    // no other singular points: recenter the node and rerun
                    // the resultant certificate
                    QPolyN moved = recenter(out.q, z);
                    if (certify_no_singular_point(moved, /*allow_center=*/true)) {
                        out.kind = SectionKind::OneNode;
                        out.node = z;
                        return out;
                    }
                }
            }
        }
    }

    out.kind = SectionKind::Degenerate;
    out.degenerate_reason = "section is not smooth and not a certified one-node quartic";
    return out;
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, int attempt) {
    return seed * 1000003ULL + std::uint64_t(attempt) * 777767777ULL + 12345ULL;
}

} // namespace

PlaneSpec random_smooth_plane(const quartic13::QuarticSurface& S, std::uint64_t seed,
                              PlaneQuartic* out_section) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        SplitMix64 rng(mix_seed(seed, attempt));
        std::array<Rat, 4> y;
        bool nz = false;
        for (auto& v : y) {
            v = Rat(rng.range(-5, 5));
            if (sgn(v) != 0) nz = true;
        }
        if (!nz) continue;
        PlaneSpec p = PlaneSpec::from_coeffs(y);
        PlaneQuartic sec = section(S, p);
        if (sec.kind == SectionKind::Smooth) {
            if (out_section) *out_section = sec;
            return p;
        }
    }
    throw std::runtime_error("no smooth plane found for this seed");
}

PlaneSpec random_node_plane(const quartic13::QuarticSurface& S, std::uint64_t seed,
                            PlaneQuartic* out_section) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        SplitMix64 rng(mix_seed(seed ^ 0x5bd1e995, attempt));
        std::array<Rat, 4> y{Rat(0), Rat(0), Rat(0), Rat(0)};
        bool nz = false;
        for (int i = 0; i < 3; ++i) {
            y[size_t(i)] = Rat(rng.range(-5, 5));
            if (sgn(y[size_t(i)]) != 0) nz = true;
        }
        if (!nz) continue;
        PlaneSpec p = PlaneSpec::from_coeffs(y);
        PlaneQuartic sec = section(S, p);
        if (sec.kind == SectionKind::OneNode) {
            if (out_section) *out_section = sec;
            return p;
        }
    }
    throw std::runtime_error("no one-node plane found for this seed");
}

// ---- even-contact certificates ---------------------------------------------

namespace {

// is the binary form a nonzero scalar times a perfect square (over C)?
// decided exactly: all root multiplicities even
bool is_square_up_to_scalar(const QBin& r) {
    if (r.is_zero_form()) return false;
    int lo = 0, hi = r.deg;
    while (is_zero(r.coeffs[size_t(lo)])) ++lo;
    while (is_zero(r.coeffs[size_t(hi)])) --hi;
    int tp = lo, sp = r.deg - hi;
    if (tp % 2 || sp % 2) return false;
    // dehomogenized core
    std::vector<Rat> c(r.coeffs.begin() + lo, r.coeffs.begin() + hi + 1);
    std::reverse(c.begin(), c.end());
    ZPoly z = to_zpoly(QPoly{std::move(c)});
    for (auto& [f, mult] : squarefree_decomposition(z))
        if (mult % 2) return false;
    return true;
}

} // namespace

ContactCertificate touches_evenly(const PlaneQuartic& pq, const QConic& conic) {
    ContactCertificate cert;
    cert.exact = true;
    Rat d = conic.det();
    if (sgn(d) == 0) throw std::domain_error("reducible conic: use the family route");
    QPolyN C = conic.to_poly(Z3);
    // project from 13 centers on a rational normal conic; no three collinear,
    // so paired-up odd contacts cannot hide from all of them
    int squares = 0;
    for (long k = 0; k <= 12; ++k) {
        std::array<Rat, 3> center{Rat(k * k), Rat(k), Rat(1)};
        QPolyN qc = recenter(pq.q, center);
        QPolyN cc = recenter(C, center);
        QPolyN res = resultant_z2(cc, 2, qc, 4);
        if (res.is_zero_poly()) {
            cert.even = false;
            cert.detail = "conic shares a component with the quartic";
            return cert;
        }
        if (!is_square_up_to_scalar(to_qbin(res, 8))) {
            cert.even = false;
            cert.detail = "odd-order contact exposed by projection " + std::to_string(k);
            return cert;
        }
        ++squares;
    }
    cert.even = true;
    cert.detail = "square resultants from " + std::to_string(squares) + " projections";
    return cert;
}

ContactCertificate touches_evenly(const PlaneQuartic& pq, const std::array<CIv, 6>& conic,
                                  mpfr_prec_t prec) {
    ContactCertificate cert;
    cert.exact = false;
    // determinant of the symmetric matrix must exclude zero
    CIv two = CIv::exact(2, prec);
    std::array<std::array<CIv, 3>, 3> M;
    M[0][0] = conic[0];
    M[1][1] = conic[1];
    M[2][2] = conic[2];
    M[0][1] = M[1][0] = div(conic[3], two);
    M[0][2] = M[2][0] = div(conic[4], two);
    M[1][2] = M[2][1] = div(conic[5], two);
    auto det3 = [&](const std::array<std::array<CIv, 3>, 3>& A) {
        CIv t1 = mul(A[0][0], sub(mul(A[1][1], A[2][2]), mul(A[1][2], A[2][1])));
        CIv t2 = mul(A[0][1], sub(mul(A[1][0], A[2][2]), mul(A[1][2], A[2][0])));
        CIv t3 = mul(A[0][2], sub(mul(A[1][0], A[2][1]), mul(A[1][1], A[2][0])));
        return add(sub(t1, t2), t3);
    };
    if (!det3(M).excludes_zero())
        throw std::domain_error("conic determinant not certified nonzero (refine)");

    // interval resultant of the conic against the quartic in the z2
    // direction, then a witness completion for the degree-8 form
    // coefficients of z2 powers as interval binary forms in (z0, z1)
    // Build the 6x6 Sylvester determinant numerically on a parameter grid is
    // not available here, so expand symbolically over intervals.
    // conic in z2: c2 z2^2 + c1(z0,z1) z2 + c0(z0,z1)
    // quartic in z2: sum_k q_k(z0,z1) z2^k
    // Work with dense binary-form coefficient vectors over CIv.
    auto zero_vec = [&](int n) { return std::vector<CIv>(size_t(n), CIv::exact(0, prec)); };
    // conic coefficient forms
    std::vector<std::vector<CIv>> cf(3);
    cf[2] = {conic[2]};                               // z2^2: constant
    cf[1] = zero_vec(2);
    cf[1][0] = conic[4];                              // xz: z0
    cf[1][1] = conic[5];                              // yz: z1
    cf[0] = zero_vec(3);
    cf[0][0] = conic[0];
    cf[0][1] = conic[3];
    cf[0][2] = conic[1];                              // z0^2, z0 z1, z1^2
    std::vector<std::vector<CIv>> qf(5);
    for (int k = 0; k <= 4; ++k) {
        QPolyN co = pq.q.coeff_of(2, k);
        qf[size_t(k)] = zero_vec(5 - k);
        for (auto& [e, c] : co.terms)
            qf[size_t(k)][size_t(e[1])] = add(qf[size_t(k)][size_t(e[1])], to_civ(c, prec));
    }
    // Sylvester matrix 6x6 with binary-form entries; expand the determinant
    // by minors over dense CIv forms
    auto mulf = [&](const std::vector<CIv>& a, const std::vector<CIv>& b) {
        std::vector<CIv> r(a.size() + b.size() - 1, CIv::exact(0, prec));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = add(r[i + j], mul(a[i], b[j]));
        return r;
    };
    auto addf = [&](std::vector<CIv> a, const std::vector<CIv>& b) {
        if (a.size() < b.size()) a.resize(b.size(), CIv::exact(0, prec));
        for (size_t i = 0; i < b.size(); ++i) a[i] = add(a[i], b[i]);
        return a;
    };
    auto subf = [&](std::vector<CIv> a, const std::vector<CIv>& b) {
        if (a.size() < b.size()) a.resize(b.size(), CIv::exact(0, prec));
        for (size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        return a;
    };
    // rows: 4 shifted copies of conic (degrees z2^2..z2^0), 2 of quartic
    std::vector<std::vector<std::vector<CIv>>> S(6, std::vector<std::vector<CIv>>(6, zero_vec(1)));
    for (int r = 0; r < 4; ++r)
        for (int k = 0; k <= 2; ++k)
            S[size_t(r)][size_t(r + 2 - k)] = cf[size_t(k)];
    for (int r = 0; r < 2; ++r)
        for (int k = 0; k <= 4; ++k)
            S[size_t(4 + r)][size_t(r + 4 - k)] = qf[size_t(k)];
    std::function<std::vector<CIv>(size_t, unsigned)> rec = [&](size_t row, unsigned used) -> std::vector<CIv> {
        if (row == 6) return {CIv::exact(1, prec)};
        std::vector<CIv> acc = zero_vec(1);
        int sign = 1;
        for (size_t c = 0; c < 6; ++c) {
            if (used & (1u << c)) continue;
            std::vector<CIv> sub_d = rec(row + 1, used | (1u << c));
            std::vector<CIv> term = mulf(S[row][c], sub_d);
            acc = sign > 0 ? addf(acc, term) : subf(acc, term);
            sign = -sign;
        }
        return acc;
    };
    std::vector<CIv> res = rec(0, 0);
    res.resize(9, CIv::exact(0, prec));
    // witness completion: res ?= W^2 with W of degree 4 (9 coefficients -> 5)
    // find an end coefficient certified nonzero
    if (!res[0].excludes_zero() && !res[8].excludes_zero())
        throw std::domain_error("resultant end coefficients not certified (refine)");
    bool from_front = res[0].excludes_zero();
    std::vector<CIv> rr = res;
    if (!from_front) std::reverse(rr.begin(), rr.end());
    CIv w0 = sqrt_civ(rr[0], prec);
    std::vector<CIv> Wv(5, CIv::exact(0, prec));
    Wv[0] = w0;
    CIv two_w0 = mul(CIv::exact(2, prec), w0);
    for (int i = 1; i <= 4; ++i) {
        CIv acc = rr[size_t(i)];
        for (int j = 1; j < i; ++j)
            if (i - j <= 4) acc = sub(acc, mul(Wv[size_t(j)], Wv[size_t(i - j)]));
        Wv[size_t(i)] = div(acc, two_w0);
    }
    // verify the remaining coefficients
    for (int i = 5; i <= 8; ++i) {
        CIv acc = rr[size_t(i)];
        for (int j = i - 4; j <= 4; ++j)
            acc = sub(acc, mul(Wv[size_t(j)], Wv[size_t(i - j)]));
        if (acc.excludes_zero()) {
            cert.even = false;
            cert.detail = "resultant is certified non-square";
            return cert;
        }
    }
    cert.even = true;
    cert.detail = "resultant consistent with a perfect square at precision";
    return cert;
}

std::array<CIv, 6> family_member(const TouchingFamily& f, const Rat& lambda, const Rat& mu,
                                 mpfr_prec_t prec) {
    CIv l2 = to_civ(lambda * lambda, prec);
    CIv lm = to_civ(lambda * mu * 2, prec);
    CIv m2 = to_civ(mu * mu, prec);
    std::array<CIv, 6> out;
    for (size_t k = 0; k < 6; ++k)
        out[k] = add(add(mul(l2, f.U[k]), mul(lm, f.V[k])), mul(m2, f.W[k]));
    return out;
}

// ---- sheets -----------------------------------------------------------------

std::array<CIv, 3> crossing_point(const Bitangent& a, const Bitangent& b, mpfr_prec_t prec) {
    auto get = [&](const Bitangent& t, size_t i) {
        return t.exact ? to_civ(t.line_exact[i], prec) : t.line[i];
    };
    std::array<CIv, 3> u{get(a, 0), get(a, 1), get(a, 2)};
    std::array<CIv, 3> v{get(b, 0), get(b, 1), get(b, 2)};
    return {sub(mul(u[1], v[2]), mul(u[2], v[1])),
            sub(mul(u[2], v[0]), mul(u[0], v[2])),
            sub(mul(u[0], v[1]), mul(u[1], v[0]))};
}

namespace {

// solve param * (s,t) = p for a line parameterization, interval version;
// returns (s,t)
std::pair<CIv, CIv> param_coords(const Bitangent& bt, const std::array<CIv, 3>& p,
                                 mpfr_prec_t prec) {
    auto col = [&](int k, size_t i) {
        return bt.exact ? to_civ(bt.param_exact[size_t(k)][i], prec) : bt.param[size_t(k)][i];
    };
    // choose the coordinate pair with the best-conditioned 2x2 determinant
    int bi = -1, bj = -1;
    double best = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            CIv det = sub(mul(col(0, size_t(i)), col(1, size_t(j))),
                          mul(col(0, size_t(j)), col(1, size_t(i))));
            if (!det.excludes_zero()) continue;
            double m = mag_d(det);
            if (m > best) { best = m; bi = i; bj = j; }
        }
    if (bi < 0) throw std::domain_error("degenerate line parameterization");
    CIv det = sub(mul(col(0, size_t(bi)), col(1, size_t(bj))),
                  mul(col(0, size_t(bj)), col(1, size_t(bi))));
    CIv s = div(sub(mul(p[size_t(bi)], col(1, size_t(bj))), mul(p[size_t(bj)], col(1, size_t(bi)))), det);
    CIv t = div(sub(mul(col(0, size_t(bi)), p[size_t(bj)]), mul(col(0, size_t(bj)), p[size_t(bi)])), det);
    return {s, t};
}

CIv witness_value(const Bitangent& bt, const CIv& s, const CIv& t, mpfr_prec_t prec) {
    if (bt.exact) {
        // W = sqrt(d) * w~, with d rational of known sign
        CIv w = add(add(mul(mul(to_civ(bt.wit_exact.coeffs[0], prec), s), s),
                        mul(mul(to_civ(bt.wit_exact.coeffs[1], prec), s), t)),
                    mul(mul(to_civ(bt.wit_exact.coeffs[2], prec), t), t));
        Rat d = bt.wit_scale_exact;
        if (sgn(d) >= 0) {
            RIv sd = sqrt_nonneg(RIv::from_rat(d, prec));
            return mul(w, CIv{sd, RIv::exact(0, prec)});
        }
        RIv sd = sqrt_nonneg(RIv::from_rat(-d, prec));
        return mul(w, CIv{RIv::exact(0, prec), sd});
    }
    CIv w = add(add(mul(mul(bt.witness[0], s), s), mul(mul(bt.witness[1], s), t)),
                mul(mul(bt.witness[2], t), t));
    return w;
}

} // namespace

bool sheets_agree(const PlaneQuartic& pq, const Bitangent& a, const Bitangent& b,
                  mpfr_prec_t prec) {
    // exact pair: decide with rational arithmetic
    if (a.exact && b.exact) {
        // crossing point, exact
        const auto& u = a.line_exact;
        const auto& v = b.line_exact;
        std::array<Rat, 3> p{u[1] * v[2] - u[2] * v[1],
                             u[2] * v[0] - u[0] * v[2],
                             u[0] * v[1] - u[1] * v[0]};
        auto solve_exact = [&](const Bitangent& bt) {
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    Rat det = bt.param_exact[0][size_t(i)] * bt.param_exact[1][size_t(j)]
                            - bt.param_exact[0][size_t(j)] * bt.param_exact[1][size_t(i)];
                    if (sgn(det) == 0) continue;
                    Rat s = (p[size_t(i)] * bt.param_exact[1][size_t(j)]
                           - p[size_t(j)] * bt.param_exact[1][size_t(i)]) / det;
                    Rat t = (bt.param_exact[0][size_t(i)] * p[size_t(j)]
                           - bt.param_exact[0][size_t(j)] * p[size_t(i)]) / det;
                    return std::pair<Rat, Rat>{s, t};
                }
            throw std::domain_error("degenerate exact parameterization");
        };
        auto [sa, ta] = solve_exact(a);
        auto [sb, tb] = solve_exact(b);
        Rat wa = a.wit_exact.eval(sa, ta);
        Rat wb = b.wit_exact.eval(sb, tb);
        const Rat &da = a.wit_scale_exact, &db = b.wit_scale_exact;
        if (sgn(wa) == 0 && sgn(wb) == 0) throw std::domain_error("crossing point on the quartic");
        // values are sqrt(da) wa and sqrt(db) wb; squares agree, so equality
        // amounts to matching "kind" (real vs imaginary) and sign
        bool real_a = sgn(da) >= 0, real_b = sgn(db) >= 0;
        if (real_a != real_b) return false;
        if (da * wa * wa != db * wb * wb) throw std::logic_error("sheet values with different squares");
        return sgn(wa) == sgn(wb);
    }
    auto p = crossing_point(a, b, prec);
    auto [sa, ta] = param_coords(a, p, prec);
    auto [sb, tb] = param_coords(b, p, prec);
    CIv va = witness_value(a, sa, ta, prec);
    CIv vb = witness_value(b, sb, tb, prec);
    CIv diff = sub(va, vb), sum = add(va, vb);
    if (diff.excludes_zero() && sum.excludes_zero())
        throw std::domain_error("sheet comparison inconsistent (refine)");
    if (diff.excludes_zero()) return false;
    if (sum.excludes_zero()) return true;
    throw std::domain_error("sheet comparison undecided at this precision (refine)");
}

} // namespace tconic::planeq
