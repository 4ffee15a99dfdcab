#include "tconic/plane_quartic.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

// Touching-conic families.  A reducible member U = ell_i ell_j seeds the
// family: V is interpolated through the contact data on both lines (the
// restriction of V to ell must square to minus the restriction of the
// quartic), W is solved linearly from q + V^2 = U W, and the remaining
// reducible members are the roots of det(lambda^2 U + 2 lambda V + W).

namespace tconic::planeq {

namespace {

const std::vector<std::string> Z3{"z0", "z1", "z2"};

using Vec6 = std::array<CIv, 6>;
using Vec3 = std::array<CIv, 3>;

CIv czero(mpfr_prec_t p) { return CIv::exact(0, p); }

// conic 6-vector of the product of two line covectors
Vec6 line_product(const Vec3& u, const Vec3& v, mpfr_prec_t p) {
    Vec6 c;
    c[0] = mul(u[0], v[0]);
    c[1] = mul(u[1], v[1]);
    c[2] = mul(u[2], v[2]);
    c[3] = add(mul(u[0], v[1]), mul(u[1], v[0]));
    c[4] = add(mul(u[0], v[2]), mul(u[2], v[0]));
    c[5] = add(mul(u[1], v[2]), mul(u[2], v[1]));
    (void)p;
    return c;
}

Vec3 line_of(const Bitangent& bt, mpfr_prec_t p) {
    Vec3 u;
    for (size_t i = 0; i < 3; ++i)
        u[i] = bt.exact ? to_civ(bt.line_exact[i], p) : bt.line[i];
    return u;
}

// interval witness value vector of a bitangent: the three coefficients of W
// with q|_param = W^2
Vec3 witness_of(const Bitangent& bt, mpfr_prec_t p) {
    if (!bt.exact) return bt.witness;
    // W = sqrt(d) * w~
    CIv sd;
    if (sgn(bt.wit_scale_exact) >= 0) {
        RIv r = sqrt_nonneg(RIv::from_rat(bt.wit_scale_exact, p));
        sd = CIv{r, RIv::exact(0, p)};
    } else {
        RIv r = sqrt_nonneg(RIv::from_rat(-bt.wit_scale_exact, p));
        sd = CIv{RIv::exact(0, p), r};
    }
    Vec3 w;
    for (size_t i = 0; i < 3; ++i) w[i] = mul(sd, to_civ(bt.wit_exact.coeffs[i], p));
    return w;
}

Vec3 param_col(const Bitangent& bt, int k, mpfr_prec_t p) {
    Vec3 c;
    for (size_t i = 0; i < 3; ++i)
        c[i] = bt.exact ? to_civ(bt.param_exact[size_t(k)][i], p) : bt.param[size_t(k)][i];
    return c;
}

// restriction map of a conic 6-vector to a line parameterization: a 3x6
// interval matrix sending conic coefficients to (s^2, s t, t^2) coefficients
std::array<std::array<CIv, 6>, 3> restriction_matrix(const Vec3& P0, const Vec3& P1,
                                                     mpfr_prec_t p) {
    // conic monomials in order x^2, y^2, z^2, xy, xz, yz evaluated on
    // (s P0 + t P1): collect s^2, st, t^2 coefficients
    std::array<std::array<CIv, 6>, 3> M;
    for (auto& row : M)
        for (auto& e : row) e = czero(p);
    auto mono = [&](size_t i, size_t j) {
        // returns s^2, st, t^2 coefficients of coord_i * coord_j
        std::array<CIv, 3> r;
        r[0] = mul(P0[i], P0[j]);
        r[1] = add(mul(P0[i], P1[j]), mul(P1[i], P0[j]));
        r[2] = mul(P1[i], P1[j]);
        return r;
    };
    const std::array<std::pair<size_t, size_t>, 6> cols{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
    for (size_t c = 0; c < 6; ++c) {
        auto m = mono(cols[c].first, cols[c].second);
        for (size_t r = 0; r < 3; ++r) M[r][c] = m[r];
    }
    return M;
}

// solve an n x 6 interval linear system (n >= 6 rows, rank 6 expected):
// Gaussian elimination with magnitude pivoting; surplus rows are checked
// for consistency (residual must contain zero).  Returns false when a pivot
// cannot be certified nonzero or a surplus row is certainly inconsistent.
bool solve_6(std::vector<std::array<CIv, 7>>& rows, Vec6& out, mpfr_prec_t p, bool* hard_fail) {
    *hard_fail = false;
    size_t n = rows.size();
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < 6 && r < n; ++c) {
        // best pivot in column c among rows r..n-1
        size_t best = n;
        double bestmag = 0;
        for (size_t i = r; i < n; ++i) {
            if (!rows[i][c].excludes_zero()) continue;
            double m = mag_d(rows[i][c]);
            if (m > bestmag) { bestmag = m; best = i; }
        }
        if (best == n) continue;   // no certified-nonzero entry in the column
        std::swap(rows[r], rows[best]);
        for (size_t i = r + 1; i < n; ++i) {
            CIv f = div(rows[i][c], rows[r][c]);
            for (size_t k = c; k < 7; ++k)
                rows[i][k] = sub(rows[i][k], mul(f, rows[r][k]));
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != 6) return false;
    // consistency of surplus rows: all residuals must contain zero
    for (size_t i = r; i < n; ++i)
        if (rows[i][6].excludes_zero()) { *hard_fail = true; return false; }
    // back-substitute the triangular part
    Vec6 x{czero(p), czero(p), czero(p), czero(p), czero(p), czero(p)};
    for (size_t i = 6; i-- > 0;) {
        size_t c = pivots[i];
        CIv acc = rows[i][6];
        for (size_t k = c + 1; k < 6; ++k) acc = sub(acc, mul(rows[i][k], x[k]));
        x[c] = div(acc, rows[i][c]);
    }
    out = x;
    return true;
}

// quartic coefficients (15 monomials, graded order) of a conic product U*W
// minus V^2 compared against q: we work with the 15-dimensional coefficient
// space of ternary quartics
const std::vector<Expvec>& quartic_monomials() {
    static const std::vector<Expvec> m = [] {
        std::vector<Expvec> out;
        for (int i = 4; i >= 0; --i)
            for (int j = 4 - i; j >= 0; --j)
                out.push_back({i, j, 4 - i - j});
        return out;
    }();
    return m;
}

const std::vector<Expvec>& conic_monomials_exp() {
    static const std::vector<Expvec> m{{2, 0, 0}, {0, 2, 0}, {0, 0, 2},
                                       {1, 1, 0}, {1, 0, 1}, {0, 1, 1}};
    return m;
}

// index of a quartic monomial
size_t qmono_index(const Expvec& e) {
    const auto& m = quartic_monomials();
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i] == e) return i;
    throw std::logic_error("quartic monomial lookup");
}

// 15-vector of a product of two conic 6-vectors
std::array<CIv, 15> conic_product_coeffs(const Vec6& a, const Vec6& b, mpfr_prec_t p) {
    std::array<CIv, 15> out;
    for (auto& e : out) e = czero(p);
    const auto& cm = conic_monomials_exp();
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            Expvec e{cm[i][0] + cm[j][0], cm[i][1] + cm[j][1], cm[i][2] + cm[j][2]};
            size_t idx = qmono_index(e);
            out[idx] = add(out[idx], mul(a[i], b[j]));
        }
    return out;
}

std::array<CIv, 15> quartic_coeffs_of(const QPolyN& q, mpfr_prec_t p) {
    std::array<CIv, 15> out;
    for (auto& e : out) e = czero(p);
    for (auto& [e, c] : q.terms) out[qmono_index(e)] = to_civ(c, p);
    return out;
}

// multiplication-by-U matrix: 15 x 6, U * (conic W) in quartic coordinates
std::array<std::array<CIv, 6>, 15> mul_by_conic_matrix(const Vec6& U, mpfr_prec_t p) {
    std::array<std::array<CIv, 6>, 15> M;
    for (auto& row : M)
        for (auto& e : row) e = czero(p);
    const auto& cm = conic_monomials_exp();
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) {
            Expvec e{cm[i][0] + cm[j][0], cm[i][1] + cm[j][1], cm[i][2] + cm[j][2]};
            M[qmono_index(e)][j] = add(M[qmono_index(e)][j], U[i]);
        }
    return M;
}

// det of lambda^2 U + 2 lambda V + W as a dense polynomial in lambda
std::vector<CIv> det_pencil(const Vec6& U, const Vec6& V, const Vec6& W, mpfr_prec_t p) {
    // symmetric matrix entries as quadratic polynomials in lambda:
    // entry = U_e lambda^2 + 2 V_e lambda + W_e (with off-diagonals halved)
    auto entry = [&](size_t e, const CIv& half) {
        std::vector<CIv> c(3, czero(p));
        c[0] = mul(W[e], half);
        c[1] = mul(mul(V[e], CIv::exact(2, p)), half);
        c[2] = mul(U[e], half);
        return c;
    };
    CIv one = CIv::exact(1, p);
    CIv half{RIv::from_rat(rat(1, 2), p), RIv::exact(0, p)};
    std::vector<std::vector<std::vector<CIv>>> m(3, std::vector<std::vector<CIv>>(3));
    m[0][0] = entry(0, one);
    m[1][1] = entry(1, one);
    m[2][2] = entry(2, one);
    m[0][1] = m[1][0] = entry(3, half);
    m[0][2] = m[2][0] = entry(4, half);
    m[1][2] = m[2][1] = entry(5, half);
    auto pmul = [&](const std::vector<CIv>& a, const std::vector<CIv>& b) {
        std::vector<CIv> r(a.size() + b.size() - 1, czero(p));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = add(r[i + j], mul(a[i], b[j]));
        return r;
    };
    auto padd = [&](std::vector<CIv> a, const std::vector<CIv>& b) {
        if (a.size() < b.size()) a.resize(b.size(), czero(p));
        for (size_t i = 0; i < b.size(); ++i) a[i] = add(a[i], b[i]);
        return a;
    };
    auto psub = [&](std::vector<CIv> a, const std::vector<CIv>& b) {
        if (a.size() < b.size()) a.resize(b.size(), czero(p));
        for (size_t i = 0; i < b.size(); ++i) a[i] = sub(a[i], b[i]);
        return a;
    };
    auto t1 = pmul(m[0][0], psub(pmul(m[1][1], m[2][2]), pmul(m[1][2], m[2][1])));
    auto t2 = pmul(m[0][1], psub(pmul(m[1][0], m[2][2]), pmul(m[1][2], m[2][0])));
    auto t3 = pmul(m[0][2], psub(pmul(m[1][0], m[2][1]), pmul(m[1][1], m[2][0])));
    auto det = padd(psub(t1, t2), t3);
    det.resize(7, czero(p));
    return det;
}

// kernel direction of a rank-2 symmetric interval matrix built from a conic
Vec3 conic_kernel(const Vec6& c, mpfr_prec_t p) {
    CIv half{RIv::from_rat(rat(1, 2), p), RIv::exact(0, p)};
    std::array<std::array<CIv, 3>, 3> M;
    M[0][0] = c[0];
    M[1][1] = c[1];
    M[2][2] = c[2];
    M[0][1] = M[1][0] = mul(c[3], half);
    M[0][2] = M[2][0] = mul(c[4], half);
    M[1][2] = M[2][1] = mul(c[5], half);
    // kernel = cross product of the two most independent rows
    Vec3 best{czero(p), czero(p), czero(p)};
    double bestmag = -1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Vec3 cr{sub(mul(M[size_t(i)][1], M[size_t(j)][2]), mul(M[size_t(i)][2], M[size_t(j)][1])),
                    sub(mul(M[size_t(i)][2], M[size_t(j)][0]), mul(M[size_t(i)][0], M[size_t(j)][2])),
                    sub(mul(M[size_t(i)][0], M[size_t(j)][1]), mul(M[size_t(i)][1], M[size_t(j)][0]))};
            double m = 0;
            for (auto& x : cr) m = std::max(m, mag_d(x));
            bool has_nonzero = cr[0].excludes_zero() || cr[1].excludes_zero() || cr[2].excludes_zero();
            if (has_nonzero && m > bestmag) {
                bestmag = m;
                best = cr;
            }
        }
    if (bestmag < 0) throw std::domain_error("conic kernel not certified (refine)");
    return best;
}

// split a rank-2 conic into its two lines
std::pair<Vec3, Vec3> split_conic(const Vec6& c, mpfr_prec_t p) {
    Vec3 k = conic_kernel(c, p);
    // transversal coordinate line z_m = 0 with k_m certainly nonzero
    int m = -1;
    double best = -1;
    for (int i = 0; i < 3; ++i) {
        if (!k[size_t(i)].excludes_zero()) continue;
        double mg = mag_d(k[size_t(i)]);
        if (mg > best) { best = mg; m = i; }
    }
    if (m < 0) throw std::domain_error("conic kernel has no certified coordinate (refine)");
    // parameterize the transversal line by the two other coordinates
    int a = (m + 1) % 3, b = (m + 2) % 3;
    // restrict the conic to z_m = 0: binary quadratic in (z_a, z_b)
    // coefficients: z_a^2, z_a z_b, z_b^2
    auto coef = [&](int i, int j) -> CIv {
        // coefficient of z_i z_j in the conic (i != j -> the mixed one)
        if (i == j) return c[size_t(i)];
        int lo = std::min(i, j), hi = std::max(i, j);
        if (lo == 0 && hi == 1) return c[3];
        if (lo == 0 && hi == 2) return c[4];
        return c[5];
    };
    // restriction as a polynomial in u where (z_a, z_b) = (u, 1):
    // c_aa u^2 + c_ab u + c_bb
    std::vector<CIv> poly{coef(b, b), coef(a, b), coef(a, a)};
    std::vector<CIv> roots;
    if (poly[2].excludes_zero()) {
        roots = roots_of_interval_poly(poly, 2, -int(p) + 12);
    } else if (poly[1].excludes_zero()) {
        // one root at infinity: one line passes through (z_a : z_b) = (1 : 0)
        roots = roots_of_interval_poly(std::vector<CIv>{poly[0], poly[1]}, 1, -int(p) + 12);
        std::array<CIv, 3> q1{czero(p), czero(p), czero(p)}, q2{czero(p), czero(p), czero(p)};
        q1[size_t(a)] = roots[0];
        q1[size_t(b)] = CIv::exact(1, p);
        q2[size_t(a)] = CIv::exact(1, p);
        q2[size_t(b)] = czero(p);
        auto line_through = [&](const Vec3& x, const Vec3& y) {
            return Vec3{sub(mul(x[1], y[2]), mul(x[2], y[1])),
                        sub(mul(x[2], y[0]), mul(x[0], y[2])),
                        sub(mul(x[0], y[1]), mul(x[1], y[0]))};
        };
        return {line_through(k, q1), line_through(k, q2)};
    } else {
        throw std::domain_error("conic restriction degenerate on the transversal (refine)");
    }
    std::array<CIv, 3> q1{czero(p), czero(p), czero(p)}, q2{czero(p), czero(p), czero(p)};
    q1[size_t(a)] = roots[0];
    q1[size_t(b)] = CIv::exact(1, p);
    q2[size_t(a)] = roots[1];
    q2[size_t(b)] = CIv::exact(1, p);
    auto line_through = [&](const Vec3& x, const Vec3& y) {
        return Vec3{sub(mul(x[1], y[2]), mul(x[2], y[1])),
                    sub(mul(x[2], y[0]), mul(x[0], y[2])),
                    sub(mul(x[0], y[1]), mul(x[1], y[0]))};
    };
    return {line_through(k, q1), line_through(k, q2)};
}

// match an interval line against the bitangent list; -1 when unmatched
int match_line(const Vec3& u, const BitangentList& bts, mpfr_prec_t p) {
    int found = -1;
    for (size_t i = 0; i < bts.list.size(); ++i) {
        const Bitangent& bt = bts.list[i];
        Vec3 v = line_of(bt, p);
        // cross product consistent with zero in all components?
        bool distinct = false;
        for (int k = 0; k < 3 && !distinct; ++k) {
            int k2 = (k + 1) % 3;
            CIv c = sub(mul(u[size_t(k)], v[size_t(k2)]), mul(u[size_t(k2)], v[size_t(k)]));
            if (c.excludes_zero()) distinct = true;
        }
        if (!distinct) {
            if (found >= 0) return -2;   // ambiguous
            found = int(i);
        }
    }
    return found;
}

} // namespace

std::vector<TouchingFamily> family_from_bitangent_pair(const PlaneQuartic& pq,
                                                       const BitangentList& bts,
                                                       int i, int j, mpfr_prec_t prec) {
    if (i == j) throw std::invalid_argument("family seed needs two distinct bitangents");
    const Bitangent& bi = bts.list[size_t(i)];
    const Bitangent& bj = bts.list[size_t(j)];
    mpfr_prec_t p = prec;
    Vec3 ui = line_of(bi, p), uj = line_of(bj, p);
    Vec6 U = line_product(ui, uj, p);

    // V interpolation: with q|_li = Wi^2, require V|_li = eps_i * i * Wi.
    // The global sign of V is free, so fix eps_i = +1 and try eps_j = +-1.
    CIv iunit{RIv::exact(0, p), RIv::exact(1, p)};
    Vec3 Wi = witness_of(bi, p), Wj = witness_of(bj, p);
    auto Mi = restriction_matrix(param_col(bi, 0, p), param_col(bi, 1, p), p);
    auto Mj = restriction_matrix(param_col(bj, 0, p), param_col(bj, 1, p), p);

    // normalization row: e_k with k the largest |U| coefficient
    size_t norm_k = 0;
    {
        double best = -1;
        for (size_t k = 0; k < 6; ++k) {
            double m = mag_d(U[k]);
            if (m > best) { best = m; norm_k = k; }
        }
    }

    std::vector<TouchingFamily> out;
    for (int eps = +1; eps >= -1; eps -= 2) {
        std::vector<std::array<CIv, 7>> rows;
        for (size_t r = 0; r < 3; ++r) {
            std::array<CIv, 7> row;
            for (size_t c = 0; c < 6; ++c) row[c] = Mi[r][c];
            row[6] = mul(iunit, Wi[r]);
            rows.push_back(row);
        }
        for (size_t r = 0; r < 3; ++r) {
            std::array<CIv, 7> row;
            for (size_t c = 0; c < 6; ++c) row[c] = Mj[r][c];
            row[6] = mul(mul(iunit, CIv::exact(eps, p)), Wj[r]);
            rows.push_back(row);
        }
        {
            std::array<CIv, 7> row;
            for (size_t c = 0; c < 7; ++c) row[c] = czero(p);
            row[norm_k] = CIv::exact(1, p);
            rows.push_back(row);
        }
        Vec6 V;
        bool hard_fail = false;
        if (!solve_6(rows, V, p, &hard_fail)) {
            if (hard_fail) continue;        // certified inconsistent: wrong sign
            throw std::domain_error("family interpolation not certified (refine)");
        }
        // W from q + V^2 = U W: 15 x 6 linear system
        auto rhs15 = quartic_coeffs_of(pq.q, p);
        auto v2 = conic_product_coeffs(V, V, p);
        for (size_t k = 0; k < 15; ++k) rhs15[k] = add(rhs15[k], v2[k]);
        auto MU15 = mul_by_conic_matrix(U, p);
        std::vector<std::array<CIv, 7>> wrows;
        for (size_t r = 0; r < 15; ++r) {
            std::array<CIv, 7> row;
            for (size_t c = 0; c < 6; ++c) row[c] = MU15[r][c];
            row[6] = rhs15[r];
            wrows.push_back(row);
        }
        Vec6 W;
        bool hf2 = false;
        if (!solve_6(wrows, W, p, &hf2)) {
            if (hf2) continue;              // inconsistent: this sign is wrong
            throw std::domain_error("family completion not certified (refine)");
        }
        TouchingFamily fam;
        fam.U = U;
        fam.V = V;
        fam.W = W;
        fam.seed_i = i;
        fam.seed_j = j;
        fam.node_family = bi.through_node && bj.through_node;
        out.push_back(std::move(fam));
    }
    if (out.empty())
        throw std::domain_error("no consistent family for the seed pair (refine)");
    return out;
}

namespace {

// the reducible members of a family, as bitangent index pairs
void fill_members(const PlaneQuartic& pq, const BitangentList& bts, TouchingFamily& fam,
                  mpfr_prec_t p) {
    fam.member_pairs.clear();
    auto add_pair = [&](int a, int b) {
        auto pr = std::minmax(a, b);
        fam.member_pairs.emplace_back(pr.first, pr.second);
    };
    bool seeded = fam.seed_i >= 0 && fam.seed_j >= 0;
    if (seeded) add_pair(fam.seed_i, fam.seed_j);

    auto det = det_pencil(fam.U, fam.V, fam.W, p);
    if (!seeded) {
        // no member at infinity is known; the pencil determinant must have
        // its full degree (det U certified nonzero)
        if (!det[6].excludes_zero())
            throw std::domain_error("unseeded family with degenerate leading member (refine)");
        auto roots = roots_of_interval_poly(det, 6, -int(p) + 16);
        for (auto& lam : roots) {
            Vec6 member;
            CIv l2v = mul(lam, lam);
            CIv l1v = mul(lam, CIv::exact(2, p));
            for (size_t k = 0; k < 6; ++k)
                member[k] = add(add(mul(l2v, fam.U[k]), mul(l1v, fam.V[k])), fam.W[k]);
            auto [u, v] = split_conic(member, p);
            int a = match_line(u, bts, p);
            int b = match_line(v, bts, p);
            if (a < 0 || b < 0)
                throw std::domain_error("reducible member line did not match a bitangent (refine)");
            add_pair(a, b);
        }
        std::sort(fam.member_pairs.begin(), fam.member_pairs.end());
        fam.member_pairs.erase(std::unique(fam.member_pairs.begin(), fam.member_pairs.end()),
                               fam.member_pairs.end());
        return;
    }

    // det has exact degree <= 5 in lambda (det U = 0 structurally); member
    // count: the seed sits at infinity with multiplicity 1 (2 for a node
    // seed, one fewer finite root)
    int finite = fam.node_family ? 4 : 5;
    // noise clean-up: the two top coefficients beyond the structural degree
    // must be consistent with zero
    if (det[6].excludes_zero())
        throw std::logic_error("pencil determinant has degree 6");
    std::vector<CIv> dpoly(det.begin(), det.begin() + 6);
    if (fam.node_family) {
        if (dpoly[5].excludes_zero())
            throw std::domain_error("node family determinant degree not dropping (refine)");
        dpoly.pop_back();
    }

    const bool nodal = pq.kind == SectionKind::OneNode;
    std::vector<CIv> roots;
    if (!nodal || fam.node_family) {
        roots = roots_of_interval_poly(dpoly, finite, -int(p) + 16);
    } else {
        // a family seeded away from the node can carry the node conic as a
        // double root; split it off explicitly when present
        bool seed_b = bts.list[size_t(fam.seed_i)].through_node ||
                      bts.list[size_t(fam.seed_j)].through_node;
        if (seed_b) {
            roots = roots_of_interval_poly(dpoly, finite, -int(p) + 16);
        } else {
            // c-type seed: members are 3 simple roots plus the node member
            // as a double root at the common zero of M(lambda) n = 0
            std::array<CIv, 3> nratv{to_civ(pq.node[0], p), to_civ(pq.node[1], p),
                                     to_civ(pq.node[2], p)};
            // components of (lambda^2 U + 2 lambda V + W) n as quadratics
            CIv half{RIv::from_rat(rat(1, 2), p), RIv::exact(0, p)};
            auto sym = [&](const Vec6& c) {
                std::array<std::array<CIv, 3>, 3> M;
                M[0][0] = c[0];
                M[1][1] = c[1];
                M[2][2] = c[2];
                M[0][1] = M[1][0] = mul(c[3], half);
                M[0][2] = M[2][0] = mul(c[4], half);
                M[1][2] = M[2][1] = mul(c[5], half);
                return M;
            };
            auto MU = sym(fam.U), MV = sym(fam.V), MW = sym(fam.W);
            std::optional<CIv> lam_node;
            for (int comp = 0; comp < 3 && !lam_node; ++comp) {
                std::vector<CIv> quad(3, czero(p));
                for (int c2 = 0; c2 < 3; ++c2) {
                    quad[0] = add(quad[0], mul(MW[size_t(comp)][size_t(c2)], nratv[size_t(c2)]));
                    quad[1] = add(quad[1], mul(mul(MV[size_t(comp)][size_t(c2)], CIv::exact(2, p)), nratv[size_t(c2)]));
                    quad[2] = add(quad[2], mul(MU[size_t(comp)][size_t(c2)], nratv[size_t(c2)]));
                }
                if (!quad[2].excludes_zero()) continue;
                auto rts = roots_of_interval_poly(quad, 2, -int(p) + 16);
                // the node root must satisfy the other two components too
                for (auto& r0 : rts) {
                    bool all = true;
                    for (int other = 0; other < 3 && all; ++other) {
                        if (other == comp) continue;
                        CIv val = czero(p);
                        for (int c2 = 0; c2 < 3; ++c2) {
                            CIv m = add(add(mul(mul(r0, r0), MU[size_t(other)][size_t(c2)]),
                                            mul(mul(r0, CIv::exact(2, p)), MV[size_t(other)][size_t(c2)])),
                                        MW[size_t(other)][size_t(c2)]);
                            val = add(val, mul(m, nratv[size_t(c2)]));
                        }
                        if (val.excludes_zero()) all = false;
                    }
                    if (all) { lam_node = r0; break; }
                }
            }
            if (!lam_node)
                throw std::domain_error("node member of a c-seeded family not located (refine)");
            // deflate (lambda - lam_node)^2 from the degree-5 polynomial
            std::vector<CIv> cubic(4, czero(p));
            {
                // synthetic division twice
                std::vector<CIv> cur = dpoly;
                for (int pass = 0; pass < 2; ++pass) {
                    std::vector<CIv> quot(cur.size() - 1, czero(p));
                    CIv carry = czero(p);
                    for (size_t k = cur.size(); k-- > 1;) {
                        carry = k == cur.size() - 1 ? cur[k] : add(cur[k], mul(carry, *lam_node));
                        quot[k - 1] = carry;
                    }
                    CIv rem = add(cur[0], mul(carry, *lam_node));
                    if (rem.excludes_zero())
                        throw std::domain_error("node member deflation failed (refine)");
                    cur = quot;
                }
                cubic = cur;
            }
            roots = roots_of_interval_poly(cubic, 3, -int(p) + 16);
            roots.push_back(*lam_node);
        }
    }

    // each root gives a reducible member; split and match it
    for (auto& lam : roots) {
        Vec6 member;
        CIv l2v = mul(lam, lam);
        CIv l1v = mul(lam, CIv::exact(2, p));
        for (size_t k = 0; k < 6; ++k)
            member[k] = add(add(mul(l2v, fam.U[k]), mul(l1v, fam.V[k])), fam.W[k]);
        auto [u, v] = split_conic(member, p);
        int a = match_line(u, bts, p);
        int b = match_line(v, bts, p);
        if (a < 0 || b < 0)
            throw std::domain_error("reducible member line did not match a bitangent (refine)");
        add_pair(a, b);
    }
    std::sort(fam.member_pairs.begin(), fam.member_pairs.end());
    fam.member_pairs.erase(std::unique(fam.member_pairs.begin(), fam.member_pairs.end()),
                           fam.member_pairs.end());
}

} // namespace

namespace {

FamilyCensus enumerate_families_at(const PlaneQuartic& pq, const BitangentList& bts,
                                   mpfr_prec_t prec) {
    FamilyCensus census;
    const bool nodal = pq.kind == SectionKind::OneNode;
    size_t n = bts.list.size();

    auto classify_pair = [&](int i, int j) {
        int through = int(bts.list[size_t(i)].through_node) + int(bts.list[size_t(j)].through_node);
        return through;   // 2 = type a, 1 = type b, 0 = type c
    };
    if (nodal) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) {
                int t = classify_pair(int(i), int(j));
                if (t == 2) ++census.pairs_a;
                else if (t == 1) ++census.pairs_b;
                else ++census.pairs_c;
            }
    }

    std::map<std::pair<int, int>, std::vector<int>>& owner = census.pair_to_families;
    auto pair_key = [](int i, int j) { return std::make_pair(std::min(i, j), std::max(i, j)); };

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            auto key = pair_key(int(i), int(j));
            int expected_owners = nodal && classify_pair(int(i), int(j)) == 2 ? 2 : 1;
            if (int(owner[key].size()) >= expected_owners) continue;
            auto fams = family_from_bitangent_pair(pq, bts, int(i), int(j), prec);
            if (int(fams.size()) != expected_owners)
                throw std::domain_error("unexpected number of families through a seed pair");
            for (auto& f : fams) {
                fill_members(pq, bts, f, prec);
                // the seed pair must be among the members
                bool seeded = false;
                for (auto& mp : f.member_pairs)
                    if (mp == key) seeded = true;
                if (!seeded) throw std::logic_error("seed pair missing from its family");
                // the same family may already have been discovered from a
                // different seed; family identity is its member-pair set
                bool duplicate = false;
                for (const auto& existing : census.families)
                    if (existing.member_pairs == f.member_pairs) { duplicate = true; break; }
                if (duplicate) continue;
                int id = int(census.families.size());
                census.families.push_back(f);
                for (auto& mp : census.families.back().member_pairs) {
                    auto& own = owner[mp];
                    if (std::find(own.begin(), own.end(), id) == own.end())
                        own.push_back(id);
                }
            }
        }

    // intersecting family pairs: pairs of families sharing a reducible conic
    std::set<std::pair<int, int>> fpairs;
    for (auto& [key, fams] : owner) {
        if (fams.size() == 2)
            fpairs.insert({std::min(fams[0], fams[1]), std::max(fams[0], fams[1])});
        else if (fams.size() > 2)
            throw std::logic_error("a reducible conic in more than two families");
    }
    census.intersecting_family_pairs = int(fpairs.size());
    return census;
}

} // namespace

const std::vector<std::pair<int, int>>& reducible_members(const PlaneQuartic& pq,
                                                          const BitangentList& bts,
                                                          TouchingFamily& fam,
                                                          mpfr_prec_t prec) {
    fill_members(pq, bts, fam, prec);
    return fam.member_pairs;
}

int fiber_multiplicity(const PlaneQuartic& pq, const Bitangent& bt) {
    if (pq.kind == SectionKind::OneNode && bt.through_node) return 2;
    return 1;
}

TouchingFamily family_from_decomposition(const PlaneQuartic& pq, const std::array<CIv, 6>& U,
                                         const std::array<CIv, 6>& V, const std::array<CIv, 6>& W,
                                         mpfr_prec_t prec) {
    mpfr_prec_t p = prec;
    // coefficients of U W - V^2 against those of q: equal up to one scalar
    auto uw = conic_product_coeffs(U, W, p);
    auto v2 = conic_product_coeffs(V, V, p);
    std::array<CIv, 15> lhs;
    for (size_t k = 0; k < 15; ++k) lhs[k] = sub(uw[k], v2[k]);
    auto rhs = quartic_coeffs_of(pq.q, p);
    // scalar from the best-conditioned pair
    int best = -1;
    double bestmag = 0;
    for (int k = 0; k < 15; ++k) {
        if (!rhs[size_t(k)].excludes_zero() || !lhs[size_t(k)].excludes_zero()) continue;
        double m = std::min(mag_d(rhs[size_t(k)]), mag_d(lhs[size_t(k)]));
        if (m > bestmag) { bestmag = m; best = k; }
    }
    if (best < 0) throw std::domain_error("decomposition identity has no usable coefficient");
    CIv c = div(lhs[size_t(best)], rhs[size_t(best)]);
    for (size_t k = 0; k < 15; ++k)
        if (sub(lhs[k], mul(c, rhs[k])).excludes_zero())
            throw std::domain_error("decomposition identity fails: U W - V^2 is not proportional to q");
    // absorb the scalar: q = (U)(W / c) - (V / sqrt(c))^2
    CIv sc = sqrt_civ(c, p);
    TouchingFamily fam;
    fam.U = U;
    for (size_t k = 0; k < 6; ++k) {
        fam.V[k] = div(V[k], sc);
        fam.W[k] = div(W[k], c);
    }
    fam.seed_i = fam.seed_j = -1;
    fam.node_family = false;
    return fam;
}

FamilyCensus enumerate_families(const PlaneQuartic& pq, const BitangentList& bts,
                                mpfr_prec_t prec) {
    // refinement ladder: certification failures retry at doubled precision
    std::string last = "unknown";
    for (mpfr_prec_t p = prec; p <= prec * 4; p *= 2) {
        try {
            return enumerate_families_at(pq, bts, p);
        } catch (const std::domain_error& e) {
            last = e.what();
        }
    }
    throw std::domain_error("family census failed at requested precision (refine): " + last);
}

namespace {

std::vector<ObviousFamily> obvious_families_at(const quartic13::QuarticSurface& S,
                                               const PlaneQuartic& pq,
                                               const BitangentList& bts, mpfr_prec_t prec) {
    // restrict the surface data to the plane
    std::vector<GPolyN> img(4, GPolyN(Z3));
    for (size_t r = 0; r < 4; ++r) {
        GPolyN row(Z3);
        for (size_t c = 0; c < 3; ++c) {
            GPolyN zc = GPolyN::variable(Z3, c);
            row = row + zc * GPolyN::constant(Z3, GaussRat(pq.plane.basis[c][r]));
        }
        img[r] = row;
    }
    auto restrict4 = [&](const QPolyN& f) { return to_gauss(f).compose(img); };
    GPolyN Qh = restrict4(S.Q);
    std::array<GPolyN, 4> Eh;
    for (int i = 0; i < 4; ++i) Eh[size_t(i)] = restrict4(S.E[size_t(i)]);
    GPolyN qh = restrict4(S.F);

    std::vector<ObviousFamily> out;
    const std::array<std::pair<int, int>, 3> ij{{{1, 2}, {1, 3}, {1, 4}}};
    GaussRat iu = GaussRat::i();
    for (auto [i, j] : ij) {
        int k = 0, l = 0;
        std::array<bool, 5> used{};
        used[size_t(i)] = used[size_t(j)] = true;
        for (int t = 1; t <= 4; ++t)
            if (!used[size_t(t)]) { if (!k) k = t; else l = t; }
        ObviousFamily fam;
        fam.i = i;
        fam.j = j;
        GPolyN Up = Eh[size_t(i - 1)] * Eh[size_t(j - 1)];
        GPolyN Vp = Qh * GPolyN::constant(Z3, iu * GaussRat(rat(1, 2)));
        GPolyN Wp = Eh[size_t(k - 1)] * Eh[size_t(l - 1)] * GPolyN::constant(Z3, GaussRat(rat(-1, 4)));
        // identity: q = U W - V^2 exactly over Q(i)
        GPolyN resid = qh - (Up * Wp - Vp * Vp);
        if (!resid.is_zero_poly())
            throw std::logic_error("obvious family identity failed");
        fam.U = GConic::from_poly(Up);
        fam.V = GConic::from_poly(Vp);
        fam.W = GConic::from_poly(Wp);
        // members via the interval machinery
        TouchingFamily tf;
        for (size_t c6 = 0; c6 < 6; ++c6) {
            tf.U[c6] = to_civ(fam.U.c[c6], prec);
            tf.V[c6] = to_civ(fam.V.c[c6], prec);
            tf.W[c6] = to_civ(fam.W.c[c6], prec);
        }
        // seed pair: the bitangents e_i and e_j
        auto match_exact_line = [&](const GPolyN& E) {
            // E restricted is a linear form: covector
            Vec3 cov{czero(prec), czero(prec), czero(prec)};
            for (auto& [e, cc] : E.terms) {
                for (size_t v = 0; v < 3; ++v)
                    if (e[v] == 1) cov[v] = to_civ(cc, prec);
            }
            int m = match_line(cov, bts, prec);
            if (m < 0) throw std::domain_error("plane trace of E_i not in the bitangent list");
            return m;
        };
        tf.seed_i = match_exact_line(Eh[size_t(i - 1)]);
        tf.seed_j = match_exact_line(Eh[size_t(j - 1)]);
        if (tf.seed_i > tf.seed_j) std::swap(tf.seed_i, tf.seed_j);
        tf.node_family = false;
        fill_members(pq, bts, tf, prec);
        fam.member_pairs = tf.member_pairs;
        out.push_back(std::move(fam));
    }
    return out;
}

} // namespace

std::vector<ObviousFamily> obvious_families(const quartic13::QuarticSurface& S,
                                            const PlaneQuartic& pq,
                                            const BitangentList& bts, mpfr_prec_t prec) {
    std::string last = "unknown";
    for (mpfr_prec_t p = prec; p <= prec * 4; p *= 2) {
        try {
            return obvious_families_at(S, pq, bts, p);
        } catch (const std::domain_error& e) {
            last = e.what();
        }
    }
    throw std::domain_error("obvious family construction failed (refine): " + last);
}

} // namespace tconic::planeq
