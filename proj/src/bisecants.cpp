#include "tconic/bisecants.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tconic::bisec {

namespace {

const std::vector<std::string> X4{"x0", "x1", "x2", "x3"};
const std::vector<std::string> X5{"x0", "x1", "x2", "x3", "x4"};

QPolyN lift_vars(const QPolyN& f) {
    QPolyN g(X5);
    for (auto& [e, c] : f.terms) g.add_term({e[0], e[1], e[2], e[3], 0}, c);
    return g;
}

} // namespace

const std::vector<std::string>& CubicModel::vars5() { return X5; }

CubicModel build_cubic(const quartic13::QuarticSurface& S) {
    CubicModel m;
    m.g1 = S.E[0];
    m.g2 = S.Q;
    m.g3 = S.E[1] * S.E[2] * S.E[3];
    QPolyN resid = m.g2 * m.g2 - m.g1 * m.g3 - S.F * Rat(4);
    if (!resid.is_zero_poly())
        throw std::logic_error("cubic model identity g2^2 - g1 g3 = 4F failed");
    QPolyN x4 = QPolyN::variable(X5, 4);
    m.K = x4 * x4 * lift_vars(m.g1) + x4 * lift_vars(m.g2) * Rat(2) + lift_vars(m.g3);
    return m;
}

SpaceCurveConfig qprime_and_S(const quartic13::QuarticSurface& S) {
    SpaceCurveConfig cfg;
    QPolyN x3 = QPolyN::variable(X4, 3);
    QPolyN sumL = S.L[0] + S.L[1] + S.L[2];
    cfg.qprime = (x3 + sumL) * (x3 + sumL) - S.f2 * Rat(4);
    // components: f2 - L2^2 in E2 = 0, f2 - L1^2 in E3 = 0, f2 - L0^2 in E4 = 0
    const std::array<std::pair<int, int>, 3> table{{{2, 2}, {3, 1}, {4, 0}}};
    for (size_t k = 0; k < 3; ++k) {
        cfg.comp[k].plane_e = table[k].first;
        cfg.comp[k].plane_form = S.E[size_t(table[k].first - 1)];
        const QPolyN& L = S.L[size_t(table[k].second)];
        cfg.comp[k].conic = S.f2 - L * L;
    }
    // the quadrics Q and Q' agree on the lines E_i = E_j = 0, i<j in {2,3,4};
    // and Q' meets each such line in two distinct points
    size_t mi = 0;
    for (int i = 2; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) {
            // parameterize the line E_i = E_j = 0 (kernel of a 2x4 system)
            std::vector<std::vector<Rat>> m(2, std::vector<Rat>(4, Rat(0)));
            for (int v = 0; v < 4; ++v) {
                Expvec e(4, 0);
                e[size_t(v)] = 1;
                auto ti = S.E[size_t(i - 1)].terms.find(e);
                auto tj = S.E[size_t(j - 1)].terms.find(e);
                m[0][size_t(v)] = ti == S.E[size_t(i - 1)].terms.end() ? Rat(0) : ti->second;
                m[1][size_t(v)] = tj == S.E[size_t(j - 1)].terms.end() ? Rat(0) : tj->second;
            }
            std::vector<int> piv;
            size_t r = 0;
            for (size_t c = 0; c < 4 && r < 2; ++c) {
                size_t p = r;
                while (p < 2 && sgn(m[p][c]) == 0) ++p;
                if (p == 2) continue;
                std::swap(m[p], m[r]);
                Rat d = m[r][c];
                for (size_t x = 0; x < 4; ++x) m[r][x] /= d;
                for (size_t rr = 0; rr < 2; ++rr) {
                    if (rr == r || sgn(m[rr][c]) == 0) continue;
                    Rat f = m[rr][c];
                    for (size_t x = 0; x < 4; ++x) m[rr][x] -= f * m[r][x];
                }
                piv.push_back(int(c));
                ++r;
            }
            if (piv.size() != 2) throw std::logic_error("E_i, E_j dependent");
            std::array<std::array<Rat, 4>, 2> param{};
            int basis = 0;
            for (int fr = 0; fr < 4; ++fr) {
                if (std::find(piv.begin(), piv.end(), fr) != piv.end()) continue;
                std::array<Rat, 4> v{Rat(0), Rat(0), Rat(0), Rat(0)};
                v[size_t(fr)] = Rat(1);
                for (size_t pr = 0; pr < 2; ++pr) v[size_t(piv[pr])] = -m[pr][size_t(fr)];
                param[size_t(basis++)] = v;
            }
            std::vector<std::pair<Rat, Rat>> img;
            for (int v = 0; v < 4; ++v) img.emplace_back(param[0][size_t(v)], param[1][size_t(v)]);
            QBin qline = restrict_to_param<Rat>(S.Q, img);
            QBin qpline = restrict_to_param<Rat>(cfg.qprime, img);
            // the two quadrics cut the same divisor on the line: equal up to
            // a nonzero scalar
            {
                Rat scale;
                bool have = false, ok = true;
                for (size_t c = 0; c < 3; ++c) {
                    const Rat &a = qline.coeffs[c], &b = qpline.coeffs[c];
                    if (sgn(a) == 0 && sgn(b) == 0) continue;
                    if (sgn(a) == 0 || sgn(b) == 0) { ok = false; break; }
                    Rat r = b / a;
                    if (!have) { scale = r; have = true; }
                    else if (r != scale) { ok = false; break; }
                }
                if (!ok || !have)
                    throw std::logic_error("Q and Q' cut different divisors on a line E_i = E_j = 0");
            }
            const auto& c = qpline.coeffs;
            Rat disc = c[1] * c[1] - 4 * c[0] * c[2];
            if (sgn(disc) == 0)
                throw std::domain_error("coincident intersection points of S components");
            cfg.meets[mi++] = SpaceCurveConfig::PairMeet{i, j, qpline};
        }
    return cfg;
}

namespace {

// binary forms over CIv along a lifted line: restriction of an exact
// polynomial to s*B0 + t*B1 (4-vectors)
std::vector<CIv> restrict_line4(const QPolyN& f, const std::array<CIv, 4>& B0,
                                const std::array<CIv, 4>& B1, mpfr_prec_t p) {
    int deg = f.total_degree();
    std::vector<CIv> out(size_t(deg) + 1, CIv::exact(0, p));
    for (auto& [e, c] : f.terms) {
        std::vector<CIv> acc{to_civ(c, p)};
        for (size_t v = 0; v < 4; ++v)
            for (int k = 0; k < e[v]; ++k) {
                std::vector<CIv> nxt(acc.size() + 1, CIv::exact(0, p));
                for (size_t i = 0; i < acc.size(); ++i) {
                    nxt[i] = add(nxt[i], mul(acc[i], B0[v]));
                    nxt[i + 1] = add(nxt[i + 1], mul(acc[i], B1[v]));
                }
                acc = std::move(nxt);
            }
        for (size_t i = 0; i < acc.size(); ++i) out[i] = add(out[i], acc[i]);
    }
    return out;
}

// divide a binary quadratic by a binary linear form over intervals:
// q = l * quotient + remainder; returns (quotient coefficients, ok) with ok
// false when the division residual certainly fails to vanish
std::optional<std::array<CIv, 2>> divide_quad_by_lin(const std::vector<CIv>& q,
                                                     const std::vector<CIv>& l,
                                                     mpfr_prec_t p) {
    // q = q0 s^2 + q1 s t + q2 t^2, l = l0 s + l1 t
    if (l[0].excludes_zero()) {
        CIv a = div(q[0], l[0]);
        CIv b = div(sub(q[1], mul(a, l[1])), l[0]);
        CIv rem = sub(q[2], mul(b, l[1]));
        if (rem.excludes_zero()) return std::nullopt;
        return std::array<CIv, 2>{a, b};
    }
    if (l[1].excludes_zero()) {
        CIv b = div(q[2], l[1]);
        CIv a = div(sub(q[1], mul(b, l[0])), l[1]);
        CIv rem = sub(q[0], mul(a, l[0]));
        if (rem.excludes_zero()) return std::nullopt;
        return std::array<CIv, 2>{a, b};
    }
    throw std::domain_error("degenerate g1 restriction (refine)");
}

std::array<CIv, 4> plane_point(const planeq::PlaneSpec& plane, const std::array<CIv, 3>& z,
                               mpfr_prec_t p) {
    std::array<CIv, 4> out{CIv::exact(0, p), CIv::exact(0, p), CIv::exact(0, p), CIv::exact(0, p)};
    for (size_t r = 0; r < 4; ++r)
        for (size_t c = 0; c < 3; ++c)
            out[r] = add(out[r], mul(to_civ(plane.basis[c][r], p), z[c]));
    return out;
}

std::array<CIv, 3> bt_param_col(const planeq::Bitangent& bt, int k, mpfr_prec_t p) {
    std::array<CIv, 3> c;
    for (size_t i = 0; i < 3; ++i)
        c[i] = bt.exact ? to_civ(bt.param_exact[size_t(k)][i], p) : bt.param[size_t(k)][i];
    return c;
}

// witness of the bitangent as an interval quadratic (coefficients of
// s^2, s t, t^2)
std::array<CIv, 3> bt_witness(const planeq::Bitangent& bt, mpfr_prec_t p) {
    if (!bt.exact) return bt.witness;
    CIv sd;
    if (sgn(bt.wit_scale_exact) >= 0) {
        RIv r = sqrt_nonneg(RIv::from_rat(bt.wit_scale_exact, p));
        sd = CIv{r, RIv::exact(0, p)};
    } else {
        RIv r = sqrt_nonneg(RIv::from_rat(-bt.wit_scale_exact, p));
        sd = CIv{RIv::exact(0, p), r};
    }
    std::array<CIv, 3> w;
    for (size_t i = 0; i < 3; ++i) w[i] = mul(sd, to_civ(bt.wit_exact.coeffs[i], p));
    return w;
}

} // namespace

Lift lift_bitangent(const quartic13::QuarticSurface& S, const planeq::PlaneQuartic& pq,
                    const planeq::Bitangent& bt, mpfr_prec_t prec) {
    mpfr_prec_t p = prec;
    // line in P3: columns through the plane embedding
    std::array<CIv, 4> B0 = plane_point(pq.plane, bt_param_col(bt, 0, p), p);
    std::array<CIv, 4> B1 = plane_point(pq.plane, bt_param_col(bt, 1, p), p);
    QPolyN g1 = S.E[0];
    QPolyN g2 = S.Q;
    auto g1l = restrict_line4(g1, B0, B1, p);       // degree 1
    auto g2l = restrict_line4(g2, B0, B1, p);       // degree 2
    // contact witness of F on the line: q = 2 W  (4F| = (2W)^2)
    auto W = bt_witness(bt, p);
    CIv two = CIv::exact(2, p);
    std::array<CIv, 3> qw{mul(two, W[0]), mul(two, W[1]), mul(two, W[2])};

    Lift out;
    bool have = false;
    int consistent_signs = 0;
    for (int sg = +1; sg >= -1; sg -= 2) {
        std::vector<CIv> num(3);
        for (size_t i = 0; i < 3; ++i) {
            CIv wterm = mul(CIv::exact(sg, p), qw[i]);
            num[i] = neg(add(g2l[i], wterm));
        }
        auto quot = divide_quad_by_lin(num, g1l, p);
        if (!quot) continue;
        ++consistent_signs;
        if (!have) {
            out.l4 = *quot;
            have = true;
        }
    }
    if (!have) throw std::domain_error("bitangent lift division failed (refine)");
    out.second_lift_possible = consistent_signs == 2;
    // verification: l4^2 g1| + 2 l4 g2| + g3| must be consistent with zero
    QPolyN g3 = S.E[1] * S.E[2] * S.E[3];
    auto g3l = restrict_line4(g3, B0, B1, p);       // degree 3
    auto mulbin = [&](const std::vector<CIv>& a, const std::vector<CIv>& b) {
        std::vector<CIv> r(a.size() + b.size() - 1, CIv::exact(0, p));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = add(r[i + j], mul(a[i], b[j]));
        return r;
    };
    std::vector<CIv> l4v{out.l4[0], out.l4[1]};
    auto t1 = mulbin(mulbin(l4v, l4v), g1l);
    auto t2 = mulbin(l4v, g2l);
    std::vector<CIv> resid(4, CIv::exact(0, p));
    for (size_t i = 0; i < 4; ++i) {
        CIv v = g3l[i];
        if (i < t1.size()) v = add(v, t1[i]);
        if (i < t2.size()) v = add(v, mul(two, t2[i]));
        if (v.excludes_zero())
            throw std::domain_error("lifted line fails the cubic membership identity (refine)");
    }
    return out;
}

BisecantClass classify_bisecant(const SpaceCurveConfig& cfg,
                                const std::array<std::array<CIv, 4>, 2>& param,
                                mpfr_prec_t prec) {
    mpfr_prec_t p = prec;
    BisecantClass out;
    std::array<bool, 3> excluded{};
    std::array<bool, 3> inside_plane{};
    for (size_t k = 0; k < 3; ++k) {
        const QPolyN& E = cfg.comp[k].plane_form;
        auto el = restrict_line4(E, param[0], param[1], p);   // linear: a s + b t
        bool a0 = !el[0].excludes_zero(), b0 = !el[1].excludes_zero();
        if (a0 && b0) {
            // possibly contained in the plane
            inside_plane[k] = true;
            continue;
        }
        // intersection point at (s:t) = (el[1] : -el[0])
        std::array<CIv, 4> pt;
        for (size_t c = 0; c < 4; ++c)
            pt[c] = sub(mul(el[1], param[0][c]), mul(el[0], param[1][c]));
        CIv val = eval_civ(cfg.qprime, {pt[0], pt[1], pt[2], pt[3]}, p);
        if (val.excludes_zero()) excluded[k] = true;
    }
    std::vector<int> hits;
    for (int k = 0; k < 3; ++k)
        if (!excluded[size_t(k)]) hits.push_back(k + 1);
    if (hits.size() == 2) {
        out.label = CaseLabel::SecantTwoPoints;
        out.comp_i = hits[0];
        out.comp_j = hits[1];
    } else if (hits.empty()) {
        out.label = CaseLabel::NoContact;
    } else if (hits.size() == 1) {
        out.comp_i = out.comp_j = hits[0];
        out.label = inside_plane[size_t(hits[0] - 1)] ? CaseLabel::SecantSameComponent
                                                      : CaseLabel::TangentSmoothPoint;
    } else {
        out.label = CaseLabel::Undecided;
    }
    return out;
}

std::string to_string(Y0Label l) {
    switch (l) {
        case Y0Label::PlaneE1: return "PlaneE1";
        case Y0Label::PlaneE2: return "PlaneE2";
        case Y0Label::PlaneE3: return "PlaneE3";
        case Y0Label::PlaneE4: return "PlaneE4";
        case Y0Label::B12: return "B12";
        case Y0Label::B13: return "B13";
        case Y0Label::B23: return "B23";
    }
    return "?";
}

Y0Label y0_component_of(const quartic13::QuarticSurface& S, const planeq::PlaneQuartic& pq,
                        const planeq::Bitangent& bt, mpfr_prec_t prec) {
    mpfr_prec_t p = prec;
    // exact containment in one of the planes E_i
    if (bt.exact) {
        const std::vector<std::string> Z3v{"z0", "z1", "z2"};
        for (int i = 0; i < 4; ++i) {
            // E_i restricted to the plane, as a covector in z
            std::vector<QPolyN> img(4, QPolyN(Z3v));
            for (size_t r = 0; r < 4; ++r) {
                QPolyN row(Z3v);
                for (size_t c = 0; c < 3; ++c)
                    row = row + QPolyN::constant(Z3v, pq.plane.basis[c][r]) * QPolyN::variable(Z3v, c);
                img[r] = row;
            }
            QPolyN eh = S.E[size_t(i)].compose(img);
            std::array<Rat, 3> cov{Rat(0), Rat(0), Rat(0)};
            for (auto& [e, c] : eh.terms)
                for (size_t v = 0; v < 3; ++v)
                    if (e[v] == 1) cov[v] = c;
            // proportional to the bitangent covector?
            bool prop = true;
            // cross product must vanish identically
            for (int a = 0; a < 3 && prop; ++a) {
                int b = (a + 1) % 3;
                if (sgn(cov[size_t(a)] * bt.line_exact[size_t(b)] -
                        cov[size_t(b)] * bt.line_exact[size_t(a)]) != 0)
                    prop = false;
            }
            if (prop) return Y0Label(int(Y0Label::PlaneE1) + i);
        }
    }
    static thread_local std::map<const quartic13::QuarticSurface*, SpaceCurveConfig> cfg_cache;
    auto it = cfg_cache.find(&S);
    if (it == cfg_cache.end()) it = cfg_cache.emplace(&S, qprime_and_S(S)).first;
    const SpaceCurveConfig& cfg = it->second;

    Lift lf = lift_bitangent(S, pq, bt, p);
    // project from (0:0:0:1:-1): (x, x4) -> (x0, x1, x2, x3 + x4)
    std::array<CIv, 4> B0 = plane_point(pq.plane, bt_param_col(bt, 0, p), p);
    std::array<CIv, 4> B1 = plane_point(pq.plane, bt_param_col(bt, 1, p), p);
    std::array<std::array<CIv, 4>, 2> proj{B0, B1};
    proj[0][3] = add(proj[0][3], lf.l4[0]);
    proj[1][3] = add(proj[1][3], lf.l4[1]);
    BisecantClass cls = classify_bisecant(cfg, proj, p);
    if (cls.label != CaseLabel::SecantTwoPoints)
        throw std::domain_error("bisecant classification unresolved at precision (refine)");
    int i = cls.comp_i, j = cls.comp_j;
    if (i == 1 && j == 2) return Y0Label::B12;
    if (i == 1 && j == 3) return Y0Label::B13;
    return Y0Label::B23;
}

namespace {

ComponentCensus component_census_at(const quartic13::QuarticSurface& S,
                                    const planeq::PlaneQuartic& pq,
                                    const planeq::BitangentList& bts,
                                    const planeq::FamilyCensus& fams, mpfr_prec_t prec) {
    using planeq::sheets_agree;
    ComponentCensus out;
    size_t n = bts.list.size();

    // identify the four e_i bitangents and label everything
    std::vector<int> e_of(n, 0);       // 0 = generic, 1..4 = e_i
    int e1_index = -1;
    out.labels.resize(n);
    for (size_t b = 0; b < n; ++b) {
        Y0Label l = y0_component_of(S, pq, bts.list[b], prec);
        out.labels[b] = l;
        switch (l) {
            case Y0Label::PlaneE1: e_of[b] = 1; e1_index = int(b); break;
            case Y0Label::PlaneE2: e_of[b] = 2; break;
            case Y0Label::PlaneE3: e_of[b] = 3; break;
            case Y0Label::PlaneE4: e_of[b] = 4; break;
            case Y0Label::B12: out.histogram[0]++; break;
            case Y0Label::B13: out.histogram[1]++; break;
            case Y0Label::B23: out.histogram[2]++; break;
        }
    }
    if (e1_index < 0) throw std::domain_error("no bitangent found in the plane E1 = 0");

    // sheet flags relative to the curve over e1: flip when the raw sheets
    // agree at the crossing with e1 (the chosen curve must miss it)
    std::vector<bool> flip(n, false);
    for (size_t b = 0; b < n; ++b) {
        if (int(b) == e1_index) continue;
        flip[b] = sheets_agree(pq, bts.list[b], bts.list[size_t(e1_index)], prec);
    }
    auto incidence = [&](int a, int b) {
        bool raw = sheets_agree(pq, bts.list[size_t(a)], bts.list[size_t(b)], prec);
        return raw != flip[size_t(a)] != flip[size_t(b)];
    };

    // family classification
    auto label_class = [&](Y0Label l) {
        return l == Y0Label::B12 ? 0 : l == Y0Label::B13 ? 1 : 2;
    };
    for (const auto& f : fams.families) {
        int epairs = 0, esingle = 0, plain = 0;
        int e_partner_class = -1;
        std::vector<std::pair<int, int>> cross;
        for (auto& [a, b] : f.member_pairs) {
            bool ea = e_of[size_t(a)] > 0, eb = e_of[size_t(b)] > 0;
            if (ea && eb) ++epairs;
            else if (ea || eb) {
                ++esingle;
                int partner = ea ? b : a;
                e_partner_class = label_class(out.labels[size_t(partner)]);
            } else {
                ++plain;
                cross.emplace_back(a, b);
            }
        }
        if (epairs == 2 && plain == 4 && esingle == 0) {
            ++out.obvious_families;
        } else if (epairs == 0 && esingle == 2 && plain == 4) {
            // incidence type of the four cross pairs must be constant
            int type = -1;
            for (auto& [a, b] : cross) {
                int t = incidence(a, b) ? 1 : 0;
                if (type < 0) type = t;
                else if (type != t)
                    throw std::domain_error("mixed incidence types inside one family (refine)");
            }
            out.e_type_by_class[size_t(e_partner_class)]++;
            out.e_type_split[size_t(e_partner_class)][size_t(type)]++;
        } else if (epairs == 0 && esingle == 0) {
            ++out.mixed_families;
        } else {
            throw std::domain_error("family member profile outside the expected patterns");
        }
    }

    // dictionary: the obvious family containing the pair (e1, e_k) pairs the
    // component whose bitangents fill its non-e members
    for (const auto& f : fams.families) {
        std::vector<std::pair<int, int>> epr, rest;
        for (auto& [a, b] : f.member_pairs) {
            if (e_of[size_t(a)] > 0 && e_of[size_t(b)] > 0) epr.emplace_back(a, b);
            else rest.emplace_back(a, b);
        }
        if (epr.size() != 2) continue;
        // which e-pair partition is this?
        int k_with_e1 = -1;
        for (auto& [a, b] : epr) {
            if (a == e1_index) k_with_e1 = e_of[size_t(b)];
            if (b == e1_index) k_with_e1 = e_of[size_t(a)];
        }
        if (k_with_e1 < 0) continue;
        Y0Label cls = out.labels[size_t(rest[0].first)];
        for (auto& [a, b] : rest) {
            if (out.labels[size_t(a)] != cls || out.labels[size_t(b)] != cls)
                throw std::domain_error("obvious family spans several components");
        }
        // e1 e2 / e3 e4 -> A, e1 e3 / e2 e4 -> B, e1 e4 / e2 e3 -> C
        std::string key = k_with_e1 == 2 ? "A" : k_with_e1 == 3 ? "B" : "C";
        out.abc_dictionary[key] = cls;
    }

    out.aggregation_ok =
        out.obvious_families == 3 && out.mixed_families == 12 &&
        out.e_type_by_class[0] == 16 && out.e_type_by_class[1] == 16 &&
        out.e_type_by_class[2] == 16;
    for (size_t c = 0; c < 3; ++c)
        for (size_t t = 0; t < 2; ++t)
            if (out.e_type_split[c][t] != 8) out.aggregation_ok = false;
    return out;
}

} // namespace

ComponentCensus component_census(const quartic13::QuarticSurface& S,
                                 const planeq::PlaneQuartic& pq,
                                 const planeq::BitangentList& bts,
                                 const planeq::FamilyCensus& fams, mpfr_prec_t prec) {
    std::string last = "unknown";
    for (mpfr_prec_t p = prec; p <= prec * 4; p *= 2) {
        try {
            return component_census_at(S, pq, bts, fams, p);
        } catch (const std::domain_error& e) {
            last = e.what();
        }
    }
    throw std::domain_error("component census failed at requested precision (refine): " + last);
}

} // namespace tconic::bisec
