#include "tconic/quartic13.hpp"

#include <stdexcept>

namespace tconic::quartic13 {

namespace {

const std::vector<std::string> X4{"x0", "x1", "x2", "x3"};
const std::vector<std::string> X3{"x0", "x1", "x2"};

QPolyN var4(size_t i) { return QPolyN::variable(X4, i); }

// exact rank of a rational matrix
int rank_of(std::vector<std::vector<Rat>> m) {
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    int rank = 0;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
        ++rank;
    }
    return rank;
}

// shear s -> s + k t until the quadratic's s^2 coefficient is nonzero, then
// reduce and test the remainder; identities are shear-invariant
bool reduces_to_zero_mod(const QBin& f, const QBin& q) {
    for (long k = 0; k <= 4; ++k) {
        auto shear = [&](const QBin& g) {
            QBin out = QBin::zero(g.deg);
            // substitute s -> s + k t: expand each s^(d-i) t^i term
            for (int i = 0; i <= g.deg; ++i) {
                if (is_zero(g.coeffs[size_t(i)])) continue;
                // (s + k t)^(d-i) * t^i
                std::vector<Rat> row{Rat(1)};
                for (int m = 0; m < g.deg - i; ++m) {
                    std::vector<Rat> nxt(row.size() + 1, Rat(0));
                    for (size_t x = 0; x < row.size(); ++x) {
                        nxt[x] += row[x];
                        nxt[x + 1] += row[x] * Rat(k);
                    }
                    row = std::move(nxt);
                }
                for (size_t x = 0; x < row.size(); ++x)
                    out.coeffs[x + size_t(i)] += g.coeffs[size_t(i)] * row[x];
            }
            return out;
        };
        QBin qs = shear(q);
        if (is_zero(qs.coeffs[0])) continue;
        QBin fs = shear(f);
        return mod_bin(fs, qs).is_zero_form();
    }
    throw std::logic_error("no shear exposed a leading coefficient");
}

} // namespace

const std::vector<std::string>& QuarticSurface::vars() { return X4; }

QuarticSpec QuarticSpec::diagonal_half() {
    QuarticSpec s;
    for (int i = 0; i < 3; ++i) s.a[size_t(i)][size_t(i)] = rat(1, 2);
    return s;
}

QuarticSpec QuarticSpec::from_values(const std::vector<Rat>& v) {
    if (v.size() != 9) throw std::invalid_argument("quartic spec needs 9 rationals");
    QuarticSpec s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.a[size_t(i)][size_t(j)] = v[size_t(3 * i + j)];
    return s;
}

QuarticSurface build(const QuarticSpec& spec) {
    QuarticSurface S;
    S.spec = spec;
    QPolyN x3 = var4(3);
    S.f2 = var4(0) * var4(0) + var4(1) * var4(1) + var4(2) * var4(2);
    for (int j = 0; j < 3; ++j) {
        QPolyN L(X4);
        for (int i = 0; i < 3; ++i) L = L + var4(size_t(i)) * QPolyN::constant(X4, spec.a[size_t(i)][size_t(j)]);
        S.L[size_t(j)] = L;
    }
    const QPolyN &L0 = S.L[0], &L1 = S.L[1], &L2 = S.L[2];
    S.E[0] = x3 - L0 - L1 - L2;
    S.E[1] = x3 + L0 + L1 - L2;
    S.E[2] = x3 + L0 - L1 + L2;
    S.E[3] = x3 - L0 + L1 + L2;
    QPolyN sumL2 = L0 * L0 + L1 * L1 + L2 * L2;
    S.Q = S.f2 * Rat(2) + x3 * x3 - sumL2;
    S.F = x3 * x3 * S.f2 + x3 * L0 * L1 * L2 * Rat(2) + S.f2 * S.f2 - S.f2 * sumL2
        + L0 * L0 * L1 * L1 + L0 * L0 * L2 * L2 + L1 * L1 * L2 * L2;
    QPolyN rhs = S.Q * S.Q - S.E[0] * S.E[1] * S.E[2] * S.E[3];
    if (!(S.F * Rat(4) == rhs))
        throw std::logic_error("quartic identity 4F = Q^2 - E1 E2 E3 E4 failed");
    return S;
}

ValidationReport validate(const QuarticSpec& spec) {
    ValidationReport r;
    QuarticSurface S = build(spec);

    // pairwise independence of the L_j (2x2 minors of column pairs)
    r.independent = true;
    for (int j1 = 0; j1 < 3 && r.independent; ++j1)
        for (int j2 = j1 + 1; j2 < 3 && r.independent; ++j2) {
            std::vector<std::vector<Rat>> cols(3, std::vector<Rat>(2));
            for (int i = 0; i < 3; ++i) {
                cols[size_t(i)][0] = spec.a[size_t(i)][size_t(j1)];
                cols[size_t(i)][1] = spec.a[size_t(i)][size_t(j2)];
            }
            if (rank_of(cols) < 2) r.independent = false;
        }
    if (!r.independent) r.failures.push_back("linear forms not pairwise independent");

    {
        std::vector<std::vector<Rat>> m(3, std::vector<Rat>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[size_t(i)][size_t(j)] = spec.a[size_t(i)][size_t(j)];
        r.full_rank = rank_of(m) == 3;
    }

    // the conics f2 - L_j^2 in the plane x3 = 0
    std::array<QPolyN, 3> conics;
    for (int j = 0; j < 3; ++j) {
        QPolyN c3(X3);
        QPolyN cj = S.f2 - S.L[size_t(j)] * S.L[size_t(j)];
        for (auto& [e, coef] : cj.terms) c3.add_term({e[0], e[1], e[2]}, coef);
        conics[size_t(j)] = c3;
        // smoothness: determinant of the symmetric matrix
        // (use the generic 3x3 determinant on the polarization)
        std::array<std::array<Rat, 3>, 3> M{};
        for (auto& [e, coef] : c3.terms) {
            if (e[0] == 2) M[0][0] += coef;
            else if (e[1] == 2) M[1][1] += coef;
            else if (e[2] == 2) M[2][2] += coef;
            else if (e[0] == 1 && e[1] == 1) { M[0][1] += coef / 2; M[1][0] += coef / 2; }
            else if (e[0] == 1 && e[2] == 1) { M[0][2] += coef / 2; M[2][0] += coef / 2; }
            else { M[1][2] += coef / 2; M[2][1] += coef / 2; }
        }
        Rat det = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
                - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
                + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
        r.conic_smooth[size_t(j)] = sgn(det) != 0;
        if (!r.conic_smooth[size_t(j)])
            r.failures.push_back("conic " + std::to_string(j) + " singular");
        // positive definiteness by leading principal minors (warning level)
        Rat m1 = M[0][0];
        Rat m2 = M[0][0] * M[1][1] - M[0][1] * M[1][0];
        r.positive_definite[size_t(j)] = sgn(m1) > 0 && sgn(m2) > 0 && sgn(det) > 0;
    }

    // 12 distinct intersection points: in one common (sheared) chart, each
    // pairwise x2-resultant must be a squarefree quartic, and resultants of
    // pairs sharing a conic must be coprime (no triple point).  Intersection
    // multiplicities are shear-invariant, so a clean certificate in any
    // chart settles the question; a genuine tangency or triple point fails
    // in every chart.
    auto pair_resultant = [&](const QPolyN& A, const QPolyN& B, long k) -> ZPoly {
        auto shear = [&](const QPolyN& f) {
            std::vector<QPolyN> img{
                QPolyN::variable(X3, 0) + QPolyN::constant(X3, Rat(k)) * QPolyN::variable(X3, 2),
                QPolyN::variable(X3, 1) + QPolyN::constant(X3, Rat(k * k)) * QPolyN::variable(X3, 2),
                QPolyN::variable(X3, 2)};
            return f.compose(img);
        };
        QPolyN As = shear(A), Bs = shear(B);
        QPolyN a0 = As.coeff_of(2, 0), a1 = As.coeff_of(2, 1), a2 = As.coeff_of(2, 2);
        QPolyN b0 = Bs.coeff_of(2, 0), b1 = Bs.coeff_of(2, 1), b2 = Bs.coeff_of(2, 2);
        QPolyN res = (a2 * b0 - a0 * b2) * (a2 * b0 - a0 * b2)
                   - (a2 * b1 - a1 * b2) * (a1 * b0 - a0 * b1);
        // res is a binary quartic in (x0, x1); dehomogenize at x1 = 1
        std::vector<Rat> rc(5, Rat(0));
        int maxd = -1;
        for (auto& [e, c] : res.terms) {
            rc[size_t(e[0])] += c;
            maxd = std::max(maxd, e[0]);
        }
        if (maxd < 4) return ZPoly();     // root at infinity in this chart
        return to_zpoly(QPoly{std::move(rc)});
    };

    r.twelve_points = false;
    for (long k = 0; k <= 6 && !r.twelve_points; ++k) {
        ZPoly r01 = pair_resultant(conics[0], conics[1], k);
        ZPoly r02 = pair_resultant(conics[0], conics[2], k);
        ZPoly r12 = pair_resultant(conics[1], conics[2], k);
        if (r01.degree() != 4 || r02.degree() != 4 || r12.degree() != 4) continue;
        if (squarefree_part(r01).degree() != 4) continue;
        if (squarefree_part(r02).degree() != 4) continue;
        if (squarefree_part(r12).degree() != 4) continue;
        if (gcd_z(r01, r02).degree() != 0) continue;
        if (gcd_z(r01, r12).degree() != 0) continue;
        if (gcd_z(r02, r12).degree() != 0) continue;
        r.twelve_points = true;
    }
    if (!r.twelve_points) r.failures.push_back("conic pairs do not meet in 12 distinct points");
    return r;
}

bool ValidationReport::ok() const {
    bool smooth = conic_smooth[0] && conic_smooth[1] && conic_smooth[2];
    return independent && smooth && twelve_points;
}

NodeSet nodes(const QuarticSurface& S) {
    NodeSet out;
    // the real node: all four partials vanish at (0,0,0,1)
    std::vector<Rat> P{Rat(0), Rat(0), Rat(0), Rat(1)};
    for (int v = 0; v < 4; ++v)
        if (sgn(S.F.partial(size_t(v)).eval(P)) != 0)
            throw std::logic_error("gradient does not vanish at the real node");
    if (sgn(S.F.eval(P)) != 0) throw std::logic_error("F does not vanish at the real node");

    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            NodeLine nl;
            nl.i = i;
            nl.j = j;
            // kernel of the 2x4 system E_i = E_j = 0
            std::vector<std::vector<Rat>> m(2, std::vector<Rat>(4, Rat(0)));
            for (int v = 0; v < 4; ++v) {
                Expvec e(4, 0);
                e[size_t(v)] = 1;
                auto ti = S.E[size_t(i - 1)].terms.find(e);
                auto tj = S.E[size_t(j - 1)].terms.find(e);
                m[0][size_t(v)] = ti == S.E[size_t(i - 1)].terms.end() ? Rat(0) : ti->second;
                m[1][size_t(v)] = tj == S.E[size_t(j - 1)].terms.end() ? Rat(0) : tj->second;
            }
            // row-reduce and read off a kernel basis
            std::vector<int> pivots;
            size_t r = 0;
            for (size_t c = 0; c < 4 && r < 2; ++c) {
                size_t piv = r;
                while (piv < 2 && sgn(m[piv][c]) == 0) ++piv;
                if (piv == 2) continue;
                std::swap(m[piv], m[r]);
                Rat d = m[r][c];
                for (size_t x = 0; x < 4; ++x) m[r][x] /= d;
                for (size_t rr = 0; rr < 2; ++rr) {
                    if (rr == r || sgn(m[rr][c]) == 0) continue;
                    Rat f = m[rr][c];
                    for (size_t x = 0; x < 4; ++x) m[rr][x] -= f * m[r][x];
                }
                pivots.push_back(int(c));
                ++r;
            }
            if (pivots.size() != 2) throw std::logic_error("E_i, E_j not independent");
            int basis = 0;
            for (int free = 0; free < 4; ++free) {
                if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
                std::array<Rat, 4> v{Rat(0), Rat(0), Rat(0), Rat(0)};
                v[size_t(free)] = Rat(1);
                for (size_t pr = 0; pr < 2; ++pr)
                    v[size_t(pivots[pr])] = -m[pr][size_t(free)];
                nl.param[size_t(basis++)] = v;
            }
            // restrict Q to the line
            std::vector<std::pair<Rat, Rat>> img;
            for (int v = 0; v < 4; ++v)
                img.emplace_back(nl.param[0][size_t(v)], nl.param[1][size_t(v)]);
            nl.restricted_Q = restrict_to_param<Rat>(S.Q, img);
            // two distinct roots: nonzero discriminant
            const auto& q = nl.restricted_Q.coeffs;
            Rat disc = q[1] * q[1] - 4 * q[0] * q[2];
            if (sgn(disc) == 0)
                throw std::domain_error("coincident node pair on a line E_i = E_j = 0");
            // gradient of F vanishes along the restricted nodes: each partial,
            // restricted to the line, reduces to zero modulo the quadratic
            for (int v = 0; v < 4; ++v) {
                QBin g = restrict_to_param<Rat>(S.F.partial(size_t(v)), img);
                if (!reduces_to_zero_mod(g, nl.restricted_Q))
                    throw std::logic_error("gradient does not vanish on a conjugate node pair");
            }
            QBin f_on_line = restrict_to_param<Rat>(S.F, img);
            if (!reduces_to_zero_mod(f_on_line, nl.restricted_Q))
                throw std::logic_error("F does not vanish on a conjugate node pair");
            out.conjugate_pairs.push_back(std::move(nl));
        }
    if (out.count() != 13) throw std::logic_error("node count is not 13");
    return out;
}

int hessian_rank_at(const QPolyN& F, const std::array<Rat, 4>& pt) {
    std::vector<Rat> p(pt.begin(), pt.end());
    std::vector<std::vector<Rat>> H(4, std::vector<Rat>(4));
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j)
            H[i][j] = F.partial(i).partial(j).eval(p);
    return rank_of(H);
}

BranchSextic branch_sextic(const QuarticSurface& S) {
    BranchSextic out;
    // move f2, L_j into the 3-variable ring
    auto to3 = [](const QPolyN& f) {
        QPolyN g(X3);
        for (auto& [e, c] : f.terms) {
            if (e[3] != 0) throw std::logic_error("form involves x3");
            g.add_term({e[0], e[1], e[2]}, c);
        }
        return g;
    };
    QPolyN f2 = to3(S.f2);
    std::array<QPolyN, 3> L{to3(S.L[0]), to3(S.L[1]), to3(S.L[2])};
    QPolyN sext = (f2 - L[0] * L[0]) * (f2 - L[1] * L[1]) * (f2 - L[2] * L[2]);
    out.sextic = sext;

    // determinant route: the sextic is minus the discriminant of F viewed as
    // a quadratic in x3
    {
        QPolyN A = to3(S.F.coeff_of(3, 2));
        QPolyN B = to3(S.F.coeff_of(3, 1)) * rat(1, 2);
        QPolyN C = to3(S.F.coeff_of(3, 0));
        if (!((B * B - A * C + sext).is_zero_poly()))
            throw std::logic_error("branch sextic does not match the projection discriminant");
    }

    // parameterize f2 = 0 through (1 : i : 0) over Q(i)
    GPolyN gf2 = to_gauss(f2);
    std::vector<std::string> ST{"s", "t"};
    std::vector<GaussRat> p0{GaussRat(Rat(1)), GaussRat::i(), GaussRat(Rat(0))};
    std::vector<std::vector<GaussRat>> dirs{
        {GaussRat(Rat(0)), GaussRat(Rat(1)), GaussRat(Rat(0))},
        {GaussRat(Rat(0)), GaussRat(Rat(0)), GaussRat(Rat(1))}};
    // d(s,t) = s*u + t*v; x(s,t) = C(d) p0 - B(p0,d) d with B the polar form
    std::vector<GPolyN> d(3, GPolyN(ST));
    for (int c = 0; c < 3; ++c) {
        d[size_t(c)].add_term({1, 0}, dirs[0][size_t(c)]);
        d[size_t(c)].add_term({0, 1}, dirs[1][size_t(c)]);
    }
    // C(d): substitute d into f2;  B(p0, d) = f2(p0+d) - f2(p0) - f2(d)
    GPolyN Cd = gf2.compose(d);
    std::vector<GPolyN> p0d(3, GPolyN(ST));
    for (int c = 0; c < 3; ++c) {
        p0d[size_t(c)] = d[size_t(c)] + GPolyN::constant(ST, p0[size_t(c)]);
    }
    GPolyN Bp0d = gf2.compose(p0d) - Cd;   // f2(p0) = 0
    std::vector<GPolyN> param(3, GPolyN(ST));
    for (int c = 0; c < 3; ++c)
        param[size_t(c)] = Cd * GPolyN::constant(ST, p0[size_t(c)]) - Bp0d * d[size_t(c)];
    // sanity: the parameterization lies on the conic
    if (!to_gauss(f2).compose(param).is_zero_poly())
        throw std::logic_error("conic parameterization failed");

    GPolyN restr = to_gauss(sext).compose(param);
    // collect into a binary form of degree 12
    GBin rb = GBin::zero(12);
    for (auto& [e, c] : restr.terms) {
        if (e[0] + e[1] != 12) throw std::logic_error("restriction degree mismatch");
        rb.coeffs[size_t(e[1])] += c;
    }
    if (rb.is_zero_form())
        throw std::domain_error("sextic vanishes on the exceptional conic");
    auto w = perfect_square_witness(rb);
    if (!w) throw std::domain_error("sextic restriction is not a perfect square (tangency failure)");
    out.contact_witness = *w;
    // six distinct contact points: a binary form is squarefree iff its two
    // partials are coprime (the multiple factors divide both, by Euler)
    out.witness_squarefree = gcd_bin(w->ds(), w->dt()).deg == 0;
    return out;
}

} // namespace tconic::quartic13
