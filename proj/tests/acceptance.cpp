// Acceptance suite: every headline count and identity of the study, one
// pass/fail line per criterion.  Exact where the mathematics is exact;
// interval-certified with a 64-bit default ladder where roots are
// irrational.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "tconic/data_io.hpp"
#include "tconic/groebner.hpp"
#include "tconic/square_locus.hpp"
#include "tconic/quartic13.hpp"
#include "tconic/plane_quartic.hpp"
#include "tconic/bisecants.hpp"
#include "tconic/lattice.hpp"

using namespace tconic;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" [exception: ") + e.what() + "]";
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d: %s (%.2f s)%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                dt, note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

const quartic13::QuarticSurface& surface() {
    static const auto S = quartic13::build(quartic13::QuarticSpec::diagonal_half());
    return S;
}

constexpr mpfr_prec_t kPrec = 64;

struct PlaneData {
    planeq::PlaneQuartic pq;
    planeq::BitangentList bts;
};

// the five seeded smooth planes at the 64-bit default (the bitangent-count
// criterion pins this precision)
std::vector<PlaneData>& smooth_planes() {
    static std::vector<PlaneData> data = [] {
        std::vector<PlaneData> out;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            PlaneData d;
            planeq::random_smooth_plane(surface(), seed, &d.pq);
            d.bts = planeq::bitangents(d.pq, kPrec);
            out.push_back(std::move(d));
        }
        return out;
    }();
    return data;
}

// the same planes with 128-bit boxes: the family and component machinery
// divides through the bitangent enclosures, so it starts one rung up the
// refinement ladder
std::vector<PlaneData>& smooth_planes_hi() {
    static std::vector<PlaneData> data = [] {
        std::vector<PlaneData> out;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            PlaneData d;
            planeq::random_smooth_plane(surface(), seed, &d.pq);
            d.bts = planeq::bitangents(d.pq, 128);
            out.push_back(std::move(d));
        }
        return out;
    }();
    return data;
}

PlaneData& node_plane() {
    static PlaneData data = [] {
        PlaneData d;
        planeq::random_node_plane(surface(), 42, &d.pq);
        d.bts = planeq::bitangents(d.pq, kPrec);
        return d;
    }();
    return data;
}

PlaneData& node_plane_hi() {
    static PlaneData data = [] {
        PlaneData d;
        planeq::random_node_plane(surface(), 42, &d.pq);
        d.bts = planeq::bitangents(d.pq, 128);
        return d;
    }();
    return data;
}

} // namespace

int main() {
    std::printf("acceptance suite, default precision %d bits\n", int(kPrec));

    criterion(1, "perfect-square basis: S-pairs reduce, eliminants regenerate", [] {
        auto basis = load_poly_file(std::string(TCONIC_DATA_DIR) + "/square-locus-basis.txt",
                                    square_param_vars());
        if (basis.size() != 27) return false;
        std::pair<int, int> bad;
        if (!groebner::verify_groebner(basis, &bad)) return false;
        auto gb = groebner::buchberger(square_param_gens());
        for (auto& b : basis)
            if (!groebner::in_ideal(b, gb.gens)) return false;
        for (auto& g : square_param_gens())
            if (!groebner::in_ideal(g, basis)) return false;
        auto elim = groebner::elimination_ideal(gb, {0, 1, 2});
        if (elim.size() != 7) return false;
        for (auto& e : elim) {
            bool found = false;
            for (size_t k = 20; k < 27; ++k)
                if (proportional(e, basis[k])) found = true;
            if (!found) return false;
        }
        return true;
    });

    criterion(2, "quartic family: diagonal spec validates with 13 ordinary nodes", [] {
        auto spec = quartic13::QuarticSpec::from_values(
            load_rationals_file(std::string(TCONIC_DATA_DIR) + "/diagonal-half.qspec"));
        auto S = quartic13::build(spec);          // 4F = Q^2 - E1 E2 E3 E4 verified
        auto rep = quartic13::validate(spec);
        if (!rep.ok()) return false;
        auto N = quartic13::nodes(S);             // gradients and simple roots verified
        if (N.count() != 13) return false;
        if (N.conjugate_pairs.size() != 6) return false;
        if (quartic13::hessian_rank_at(S.F, N.real_node) != 3) return false;
        for (auto& nl : N.conjugate_pairs) {
            const auto& c = nl.restricted_Q.coeffs;
            if (sgn(c[1] * c[1] - 4 * c[0] * c[2]) == 0) return false;
        }
        auto bs = quartic13::branch_sextic(S);    // projection identity verified
        return bs.contact_witness.deg == 6 && bs.witness_squarefree;
    });

    criterion(3, "bitangent counts: 28 on five seeded smooth planes, 22+6 on a node plane", [] {
        for (auto& d : smooth_planes()) {
            if (d.pq.kind != planeq::SectionKind::Smooth) return false;
            if (d.bts.list.size() != 28) return false;
            if (d.bts.multiplicity_total() != 28) return false;
        }
        auto& nd = node_plane();
        if (nd.pq.kind != planeq::SectionKind::OneNode) return false;
        if (nd.bts.list.size() != 22) return false;
        int through = 0;
        for (auto& b : nd.bts.list)
            if (b.through_node) ++through;
        return through == 6 && nd.bts.multiplicity_total() == 28;
    });

    criterion(4, "family census: 63 x 6 disjoint (smooth); 16 + 15 intersecting pairs (node)", [] {
        auto& d = smooth_planes_hi()[0];
        auto census = planeq::enumerate_families(d.pq, d.bts, 128);
        if (census.families.size() != 63) return false;
        for (auto& f : census.families)
            if (f.member_pairs.size() != 6) return false;
        if (census.pair_to_families.size() != 378) return false;
        for (auto& [k, v] : census.pair_to_families)
            if (v.size() != 1) return false;
        if (63 * 6 != 378) return false;

        auto& nd = node_plane_hi();
        auto ncensus = planeq::enumerate_families(nd.pq, nd.bts, 128);
        if (ncensus.pairs_a != 15 || ncensus.pairs_b != 96 || ncensus.pairs_c != 120)
            return false;
        int five = 0, six = 0;
        for (auto& f : ncensus.families) {
            if (f.member_pairs.size() == 5) ++five;
            else if (f.member_pairs.size() == 6) ++six;
            else return false;
        }
        return five == 30 && six == 16 && ncensus.intersecting_family_pairs == 15;
    });

    criterion(5, "obvious families: two e-pairs plus four same-component pairs, all planes", [] {
        for (auto& d : smooth_planes_hi()) {
            auto obf = planeq::obvious_families(surface(), d.pq, d.bts, 128);
            if (obf.size() != 3) return false;
            auto fams = planeq::enumerate_families(d.pq, d.bts, 128);
            auto cc = bisec::component_census(surface(), d.pq, d.bts, fams, 128);
            // the member profile rules: 3 obvious (2 e-pairs + 4 same-class),
            // 48 e-type (2 e.x + 4 y.z), 12 mixed — all checked inside
            if (!cc.aggregation_ok) return false;
            // cross-check that the obvious families found exactly match
            // census families
            for (auto& f : obf) {
                bool found = false;
                for (auto& g : fams.families)
                    if (g.member_pairs == f.member_pairs) found = true;
                if (!found) return false;
            }
        }
        return true;
    });

    criterion(6, "lattice suite: 27/10, 72 = 30+40+2, 36 double sixes, order 51840, D4 data", [] {
        using namespace lattice;
        const Lines27& L = lines27();
        for (int i = 0; i < 27; ++i) {
            int meets = 0;
            for (int j = 0; j < 27; ++j)
                if (i != j && L.meet[size_t(i)][size_t(j)] == 1) ++meets;
            if (meets != 10) return false;
        }
        auto roots = roots_e6();
        if (roots.size() != 72) return false;
        int t30 = 0, t40 = 0, t2 = 0;
        for (auto& r : roots) {
            if (r.a == 0) ++t30;
            else if (r.a == 1 || r.a == -1) ++t40;
            else ++t2;
        }
        if (t30 != 30 || t40 != 40 || t2 != 2) return false;
        auto ds = double_sixes();
        if (ds.size() != 36) return false;
        for (auto& d : ds)
            if (d.elem.fixed_count() != 15 || !is_c16(d.elem)) return false;
        std::vector<WeylElem> gens;
        for (auto& d : ds) gens.push_back(d.elem);
        if (generate_group(gens).order() != 51840) return false;
        auto stab = stabilizer_roots();
        if (stab.size() != 12) return false;
        // the published list, up to sign (canonical representatives)
        std::vector<PicClass> want;
        auto mk = [&](int a, std::array<int, 6> b) {
            PicClass c;
            c.mode = 6;
            c.a = a;
            for (int i = 0; i < 6; ++i) c.b[size_t(i)] = b[size_t(i)];
            return c;
        };
        want = {mk(2, {1, 1, 1, 1, 1, 1}), mk(1, {1, 0, 1, 0, 0, 1}), mk(0, {-1, 1, 0, 0, 0, 0}),
                mk(1, {1, 0, 0, 1, 1, 0}), mk(1, {1, 0, 0, 1, 0, 1}), mk(1, {0, 1, 1, 0, 1, 0}),
                mk(0, {0, 0, -1, 1, 0, 0}), mk(1, {0, 1, 1, 0, 0, 1}), mk(1, {0, 1, 0, 1, 1, 0}),
                mk(1, {0, 1, 0, 1, 0, 1}), mk(0, {0, 0, 0, 0, -1, 1}), mk(1, {1, 0, 1, 0, 1, 0})};
        for (auto& w : want) {
            bool present = false;
            for (auto& g : stab)
                if (g == w) present = true;
            if (!present) return false;
        }
        // action table spot checks: x1 swaps E1<->C1, x3 swaps E1<->E2
        WeylElem w1 = reflection(want[0]);
        if (int(w1.perm[size_t(L.index_of("E1"))]) != L.index_of("C1")) return false;
        WeylElem w3 = reflection(want[2]);
        if (int(w3.perm[size_t(L.index_of("E1"))]) != L.index_of("E2")) return false;
        // D4 star on {x3, x7, x11, x12}
        Dynkin dd = dynkin({want[2], want[6], want[10], want[11]});
        return dd.center.size() == 1 && dd.center[0] == 3 && dd.edges.size() == 3;
    });

    criterion(7, "monodromy group: order 192 with the full pair-orbit census", [] {
        using namespace lattice;
        std::vector<WeylElem> gens;
        for (auto& x : stabilizer_roots()) gens.push_back(reflection(x));
        Group g = generate_group(gens);
        if (g.order() != 192) return false;
        auto lo = orbits_on_lines(g);
        std::multiset<size_t> sizes;
        for (auto& o : lo.orbits) sizes.insert(o.size());
        if (sizes != std::multiset<size_t>{1, 1, 1, 8, 8, 8}) return false;
        auto orbits = classified_pair_orbits();
        std::map<size_t, int> count;
        int total = 0;
        for (auto& o : orbits) {
            count[o.members.size()]++;
            total += int(o.members.size());
        }
        if (total != 351) return false;
        if (count[4] != 3 || count[24] != 3 || count[32] != 6 || count[8] != 9 || count[1] != 3)
            return false;
        // incidence type constant per orbit is verified in construction;
        // the 32-orbits split by incidence
        int meet32 = 0, skew32 = 0;
        for (auto& o : orbits)
            if (o.members.size() == 32) (o.incidence == 1 ? meet32 : skew32)++;
        if (meet32 != 3 || skew32 != 3) return false;
        auto census = yf2_component_census();
        return census.total_pairs() == 378 && census.total_families() == 63 &&
               verify_s4_z2_structure().ok();
    });

    criterion(8, "component pipeline: 8/8/8 labels and the 3x1 + 6x8 + 1x12 aggregation", [] {
        int done = 0;
        for (auto& d : smooth_planes_hi()) {
            if (done >= 3) break;
            auto fams = planeq::enumerate_families(d.pq, d.bts, 128);
            auto cc = bisec::component_census(surface(), d.pq, d.bts, fams, 128);
            if (cc.histogram[0] != 8 || cc.histogram[1] != 8 || cc.histogram[2] != 8)
                return false;
            if (!cc.aggregation_ok) return false;
            if (cc.obvious_families != 3 || cc.mixed_families != 12) return false;
            for (int c = 0; c < 3; ++c) {
                if (cc.e_type_by_class[size_t(c)] != 16) return false;
                if (cc.e_type_split[size_t(c)][0] != 8 || cc.e_type_split[size_t(c)][1] != 8)
                    return false;
            }
            if (3 * 1 + 6 * 8 + 1 * 12 != 63) return false;
            ++done;
        }
        return done == 3;
    });

    criterion(9, "even-contact certificates: sampled members pass, control conic fails", [] {
        auto& d = smooth_planes_hi()[1];
        auto census = planeq::enumerate_families(d.pq, d.bts, 128);
        SplitMix64 rng(2026);
        int families_checked = 0;
        for (size_t fi = 0; fi < census.families.size() && families_checked < 5; fi += 13) {
            const auto& fam = census.families[fi];
            int passed = 0, tried = 0;
            for (int t = 0; t < 14 && passed < 10; ++t) {
                Rat lam = rat(rng.range(-9, 9), rng.range(1, 5));
                Rat mu = rat(rng.range(-9, 9), rng.range(1, 5));
                if (sgn(lam) == 0 && sgn(mu) == 0) continue;
                auto member = planeq::family_member(fam, lam, mu, 128);
                try {
                    auto cert = planeq::touches_evenly(d.pq, member, 128);
                    if (!cert.even) return false;
                    ++passed;
                } catch (const std::domain_error&) {
                    // reducible member sampled; skip
                }
                ++tried;
            }
            if (passed < 10) return false;
            (void)tried;
            ++families_checked;
        }
        if (families_checked != 5) return false;
        // negative control
        QConic control({Rat(1), Rat(2), Rat(1), Rat(1), Rat(0), Rat(1)});
        auto cert = planeq::touches_evenly(d.pq, control);
        return cert.exact && !cert.even;
    });

    criterion(10, "property suites: ring axioms, 1000 square round-trips, 72 reflections", [] {
        SplitMix64 rng(7777);
        const std::vector<std::string> XYZ{"x0", "x1", "x2"};
        for (int trial = 0; trial < 30; ++trial) {
            auto rnd = [&]() {
                QPolyN p(XYZ);
                for (int i = 0; i < 4; ++i)
                    p.add_term({int(rng.below(3)), int(rng.below(3)), int(rng.below(3))},
                               rat(rng.range(-9, 9), rng.range(1, 5)));
                return p;
            };
            QPolyN a = rnd(), b = rnd(), c = rnd();
            if (!((a * b) * c == a * (b * c))) return false;
            if (!(a * (b + c) == a * b + a * c)) return false;
            if (!((a + b) - b == a)) return false;
        }
        int done = 0;
        while (done < 1000) {
            int deg = 1 + int(rng.below(4));
            std::vector<Rat> coef(size_t(deg) + 1);
            bool nz = false;
            for (auto& x : coef) {
                x = rat(rng.range(-9, 9), rng.range(1, 4));
                if (sgn(x) != 0) nz = true;
            }
            if (!nz) continue;
            QBin g(deg, std::move(coef));
            auto back = perfect_square_witness(g * g);
            if (!back) return false;
            if (!(*back == g || *back == -g)) return false;
            ++done;
        }
        using namespace lattice;
        const Lines27& L = lines27();
        for (auto& x : roots_e6()) {
            WeylElem w = reflection(x);
            if (!(w.then(w) == WeylElem::identity())) return false;
            for (int i = 0; i < 27; ++i)
                for (int j = 0; j < 27; ++j)
                    if (L.meet[size_t(w.perm[size_t(i)])][size_t(w.perm[size_t(j)])] !=
                        L.meet[size_t(i)][size_t(j)])
                        return false;
        }
        return true;
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
    return failures == 0 ? 0 : 1;
}
