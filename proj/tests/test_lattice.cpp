#include "doctest.h"

#include <functional>
#include <map>
#include <set>

#include "tconic/lattice.hpp"

using namespace tconic::lattice;

namespace {

PicClass mk6(int a, std::array<int, 6> b) {
    PicClass c;
    c.mode = 6;
    c.a = a;
    for (int i = 0; i < 6; ++i) c.b[size_t(i)] = b[size_t(i)];
    return c;
}

// the twelve distinguished roots, in the published listing order
const std::vector<PicClass>& twelve_roots() {
    static const std::vector<PicClass> r{
        mk6(2, {1, 1, 1, 1, 1, 1}),    // x1
        mk6(1, {1, 0, 1, 0, 0, 1}),    // x2
        mk6(0, {-1, 1, 0, 0, 0, 0}),   // x3
        mk6(1, {1, 0, 0, 1, 1, 0}),    // x4
        mk6(1, {1, 0, 0, 1, 0, 1}),    // x5
        mk6(1, {0, 1, 1, 0, 1, 0}),    // x6
        mk6(0, {0, 0, -1, 1, 0, 0}),   // x7
        mk6(1, {0, 1, 1, 0, 0, 1}),    // x8
        mk6(1, {0, 1, 0, 1, 1, 0}),    // x9
        mk6(1, {0, 1, 0, 1, 0, 1}),    // x10
        mk6(0, {0, 0, 0, 0, -1, 1}),   // x11
        mk6(1, {1, 0, 1, 0, 1, 0}),    // x12
    };
    return r;
}

// the published action table: six swapped line pairs per root
const std::vector<std::vector<std::pair<std::string, std::string>>>& action_table() {
    using P = std::pair<std::string, std::string>;
    static const std::vector<std::vector<P>> t{
        {{"E1","C1"},{"E2","C2"},{"E3","C3"},{"E4","C4"},{"E5","C5"},{"E6","C6"}},
        {{"E1","G36"},{"E3","G16"},{"E6","G13"},{"G45","C2"},{"G25","C4"},{"G24","C5"}},
        {{"E1","E2"},{"C1","C2"},{"G23","G13"},{"G24","G14"},{"G25","G15"},{"G26","G16"}},
        {{"E1","G45"},{"E4","G15"},{"E5","G14"},{"G36","C2"},{"G26","C3"},{"G23","C6"}},
        {{"E1","G46"},{"E4","G16"},{"E6","G14"},{"G35","C2"},{"G25","C3"},{"G23","C5"}},
        {{"E2","G35"},{"E3","G25"},{"E5","G23"},{"G46","C1"},{"G16","C4"},{"G14","C6"}},
        {{"E3","E4"},{"C3","C4"},{"G14","G13"},{"G24","G23"},{"G45","G35"},{"G46","G36"}},
        {{"E2","G36"},{"E3","G26"},{"E6","G23"},{"G45","C1"},{"G15","C4"},{"G14","C5"}},
        {{"E2","G45"},{"E4","G25"},{"E5","G24"},{"G36","C1"},{"G16","C3"},{"G13","C6"}},
        {{"E2","G46"},{"E4","G26"},{"E6","G24"},{"G35","C1"},{"G15","C3"},{"G13","C5"}},
        {{"E5","E6"},{"C5","C6"},{"G16","G15"},{"G26","G25"},{"G36","G35"},{"G46","G45"}},
        {{"E1","G35"},{"E3","G15"},{"E5","G13"},{"G46","C2"},{"G26","C4"},{"G24","C6"}},
    };
    return t;
}

Group the_192_group() {
    std::vector<WeylElem> gens;
    for (const auto& x : stabilizer_roots()) gens.push_back(reflection(x));
    return generate_group(gens);
}

} // namespace

TEST_CASE("pairing basics") {
    const Lines27& L = lines27();
    PicClass e1 = L.classes[size_t(L.index_of("E1"))];
    CHECK(pairing(e1, e1) == -1);
    PicClass w = canonical_class(6);
    CHECK(pairing(w, w) == 3);
    PicClass x3 = mk6(0, {-1, 1, 0, 0, 0, 0});
    CHECK(pairing(x3, x3) == -2);
    PicClass u7 = canonical_class(7);
    CHECK_THROWS(pairing(e1, u7));
}

TEST_CASE("27 lines: counts and incidence structure") {
    const Lines27& L = lines27();
    REQUIRE(L.classes.size() == 27);
    for (int i = 0; i < 27; ++i) {
        CHECK(is_minus_one_class(L.classes[size_t(i)]));
        int meets = 0;
        for (int j = 0; j < 27; ++j) {
            if (i == j) continue;
            int m = L.meet[size_t(i)][size_t(j)];
            CHECK((m == 0 || m == 1));
            if (m == 1) ++meets;
        }
        CHECK(meets == 10);
    }
    // two meeting lines have exactly one common neighbor meeting both
    for (int i = 0; i < 27; ++i)
        for (int j = i + 1; j < 27; ++j) {
            if (L.meet[size_t(i)][size_t(j)] != 1) continue;
            int common = 0;
            for (int k = 0; k < 27; ++k) {
                if (k == i || k == j) continue;
                if (L.meet[size_t(i)][size_t(k)] == 1 && L.meet[size_t(j)][size_t(k)] == 1) ++common;
            }
            CHECK(common == 1);
        }
}

TEST_CASE("56 curves: partner map and blow-down") {
    const Curves56& C = curves56();
    REQUIRE(C.classes.size() == 56);
    std::set<std::set<int>> pairs;
    for (int i = 0; i < 56; ++i) {
        CHECK(is_minus_one_class(C.classes[size_t(i)]));
        int p = C.partner[size_t(i)];
        CHECK(C.partner[size_t(p)] == i);
        CHECK(pairing(C.classes[size_t(i)], C.classes[size_t(p)]) == 2);
        pairs.insert(std::set<int>{i, p});
    }
    CHECK(pairs.size() == 28);
    // blow-down sends C^{i7} to C^i
    const Lines27& L = lines27();
    for (int i = 1; i <= 6; ++i) {
        std::string from = "C" + std::to_string(i) + "7";
        PicClass img = blow_down(C.classes[size_t(C.index_of(from))]);
        CHECK(L.index_of(img) == L.index_of("C" + std::to_string(i)));
    }
    // classes meeting E7 cannot be blown down
    CHECK_THROWS(blow_down(C.classes[size_t(C.index_of("K7"))]));
}

TEST_CASE("D assignments intersect as claimed") {
    const Curves56& C = curves56();
    auto d = d_assignments();
    auto cls = [&](const std::string& dn) { return C.classes[size_t(C.index_of(d.at(dn)))]; };
    for (int i = 1; i <= 4; ++i) {
        std::string p = "D" + std::to_string(i) + "+";
        std::string m = "D" + std::to_string(i) + "-";
        CHECK(pairing(cls(p), cls(m)) == 2);
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            std::string pj = "D" + std::to_string(j) + "+";
            std::string mj = "D" + std::to_string(j) + "-";
            CHECK(pairing(cls(p), cls(pj)) == 1);
            CHECK(pairing(cls(m), cls(mj)) == 1);
            CHECK(pairing(cls(p), cls(mj)) == 0);
        }
    }
    // specific published values
    CHECK(pairing(cls("D1+"), cls("D1-")) == 2);     // K7 . E7
    CHECK(pairing(cls("D2+"), cls("D3+")) == 1);     // G12 . G34
    CHECK(pairing(cls("D2+"), cls("D3-")) == 0);     // G12 . C34
}

TEST_CASE("72 roots with the 30/40/2 census, cross-checked by enumeration") {
    auto roots = roots_e6();
    REQUIRE(roots.size() == 72);
    int t30 = 0, t40 = 0, t2 = 0;
    for (const auto& r : roots) {
        CHECK(is_root(r));
        int nz = 0, sum = 0;
        for (int i = 0; i < 6; ++i) { if (r.b[size_t(i)] != 0) ++nz; sum += r.b[size_t(i)]; }
        if (r.a == 0) ++t30;
        else if (r.a == 1 || r.a == -1) ++t40;
        else ++t2;
        (void)nz; (void)sum;
    }
    CHECK(t30 == 30);
    CHECK(t40 == 40);
    CHECK(t2 == 2);
    // independent enumeration over a small coefficient window
    std::set<PicClass> found;
    for (int a = -2; a <= 2; ++a) {
        std::array<int, 6> b{};
        std::function<void(int)> rec = [&](int pos) {
            if (pos == 6) {
                PicClass c = mk6(a, b);
                if (is_root(c)) found.insert(c);
                return;
            }
            for (int v = -2; v <= 2; ++v) { b[size_t(pos)] = v; rec(pos + 1); }
        };
        rec(0);
    }
    CHECK(found.size() == 72);
    for (const auto& r : roots) CHECK(found.count(r) == 1);
}

TEST_CASE("reflections are involutions preserving the pairing and omega") {
    const Lines27& L = lines27();
    auto roots = roots_e6();
    PicClass omega = canonical_class(6);
    for (const auto& x : roots) {
        WeylElem w = reflection(x);
        CHECK(w.then(w) == WeylElem::identity());
        CHECK(reflect_class(omega, x) == omega);
        // pairing preserved on all 27 x 27 class pairs
        for (int i = 0; i < 27; ++i)
            for (int j = 0; j < 27; ++j)
                CHECK(L.meet[size_t(w.perm[size_t(i)])][size_t(w.perm[size_t(j)])] ==
                      L.meet[size_t(i)][size_t(j)]);
    }
    // x3 swaps E1 and E2
    PicClass x3 = mk6(0, {-1, 1, 0, 0, 0, 0});
    WeylElem w3 = reflection(x3);
    CHECK(int(w3.perm[size_t(L.index_of("E1"))]) == L.index_of("E2"));
    CHECK_THROWS(reflection(L.classes[0]));    // a (-1)-class is not a root
}

TEST_CASE("36 double sixes, each fixing 15 lines, matching the C16 class") {
    auto ds = double_sixes();
    REQUIRE(ds.size() == 36);
    const Lines27& L = lines27();
    for (const auto& d : ds) {
        CHECK(d.elem.fixed_count() == 15);
        CHECK(is_c16(d.elem));
        // the two sextuples: lines in each are mutually skew, and each line
        // of one meets exactly five of the other
        const std::array<int, 6>& u = d.tuple_a;
        const std::array<int, 6>& v = d.tuple_b;
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                if (a != b) {
                    CHECK(L.meet[size_t(u[size_t(a)])][size_t(u[size_t(b)])] == 0);
                    CHECK(L.meet[size_t(v[size_t(a)])][size_t(v[size_t(b)])] == 0);
                    CHECK(L.meet[size_t(u[size_t(a)])][size_t(v[size_t(b)])] == 1);
                } else {
                    CHECK(L.meet[size_t(u[size_t(a)])][size_t(v[size_t(b)])] == 0);
                }
            }
    }
    // the (E1..E6, C1..C6) pair is one of them
    bool found_ec = false;
    for (const auto& d : ds) {
        bool all = true;
        for (int k = 0; k < 6; ++k) {
            int e = L.index_of("E" + std::to_string(k + 1));
            if (int(d.elem.perm[size_t(e)]) != L.index_of("C" + std::to_string(k + 1))) all = false;
        }
        if (all) found_ec = true;
    }
    CHECK(found_ec);
}

TEST_CASE("full symmetry group has order 51840 and exactly 36 C16 elements") {
    std::vector<WeylElem> gens;
    for (const auto& d : double_sixes()) gens.push_back(d.elem);
    Group e6 = generate_group(gens);
    CHECK(e6.order() == 51840);
    int c16 = 0;
    for (const auto& w : e6.elements)
        if (is_c16(w)) ++c16;
    CHECK(c16 == 36);
    CHECK(generate_group({}).order() == 1);
}

TEST_CASE("the twelve distinguished roots and their action table") {
    auto got = stabilizer_roots();
    auto want = twelve_roots();
    REQUIRE(got.size() == 12);
    // equality as sets (canonical representatives fixed by listing order)
    for (const auto& w : want) {
        bool present = false;
        for (const auto& g : got)
            if (g == w) present = true;
        CHECK(present);
    }
    // published action table reproduced exactly
    const Lines27& L = lines27();
    for (size_t i = 0; i < 12; ++i) {
        WeylElem w = reflection(want[i]);
        std::set<std::pair<int,int>> expect;
        for (auto& [a, b] : action_table()[i]) {
            int ia = L.index_of(a), ib = L.index_of(b);
            expect.insert({std::min(ia, ib), std::max(ia, ib)});
        }
        std::set<std::pair<int,int>> actual;
        for (int k = 0; k < 27; ++k) {
            int m = w.perm[size_t(k)];
            if (m > k) actual.insert({k, m});
        }
        CHECK(actual == expect);
    }
    // no other root's reflection fixes all three G-lines: count is exactly 12
    int fixers = 0;
    int g12 = L.index_of("G12"), g34 = L.index_of("G34"), g56 = L.index_of("G56");
    for (const auto& x : roots_e6()) {
        WeylElem w = reflection(x);
        if (w.perm[size_t(g12)] == g12 && w.perm[size_t(g34)] == g34 && w.perm[size_t(g56)] == g56)
            ++fixers;
    }
    CHECK(fixers == 24);   // 12 up to sign
}

TEST_CASE("the base {x3, x7, x11, x12} spans with one-sided coefficients and forms the D4 star") {
    auto want = twelve_roots();
    std::vector<PicClass> base{want[2], want[6], want[10], want[11]};
    Dynkin d = dynkin(base);
    REQUIRE(d.center.size() == 1);
    CHECK(base[size_t(d.center[0])] == want[11]);   // x12 is the center
    CHECK(d.edges.size() == 3);
    for (auto& [i, j] : d.edges) CHECK((i == 3 || j == 3));

    // every one of the twelve is a +- nonnegative integer combination
    for (const auto& r : want) {
        bool found = false;
        for (int c0 = 0; c0 <= 2 && !found; ++c0)
            for (int c1 = 0; c1 <= 2 && !found; ++c1)
                for (int c2 = 0; c2 <= 2 && !found; ++c2)
                    for (int c3 = 0; c3 <= 2 && !found; ++c3)
                        for (int s = -1; s <= 1 && !found; s += 2) {
                            PicClass acc;
                            acc.mode = 6;
                            acc.a = s * (c0 * base[0].a + c1 * base[1].a + c2 * base[2].a + c3 * base[3].a);
                            for (int k = 0; k < 6; ++k)
                                acc.b[size_t(k)] = s * (c0 * base[0].b[size_t(k)] + c1 * base[1].b[size_t(k)]
                                                      + c2 * base[2].b[size_t(k)] + c3 * base[3].b[size_t(k)]);
                            if (acc == r) found = true;
                        }
        CHECK(found);
    }
}

TEST_CASE("the twelve reflections generate a group of order 192 with the right orbits") {
    Group g = the_192_group();
    CHECK(g.order() == 192);
    auto lo = orbits_on_lines(g);
    std::multiset<size_t> sizes;
    for (auto& o : lo.orbits) sizes.insert(o.size());
    CHECK(sizes == std::multiset<size_t>{1, 1, 1, 8, 8, 8});
    // singletons are exactly G12, G34, G56
    const Lines27& L = lines27();
    for (auto& o : lo.orbits)
        if (o.size() == 1) {
            std::string n = L.names[size_t(o[0])];
            CHECK((n == "G12" || n == "G34" || n == "G56"));
        }
}

TEST_CASE("pair orbits reproduce the published census on 351 pairs") {
    auto orbits = classified_pair_orbits();
    int total = 0;
    std::map<std::string, int> kinds;
    std::map<size_t, int> sizes;
    for (auto& o : orbits) {
        total += int(o.members.size());
        sizes[o.members.size()]++;
        if (o.kind.substr(0, 1) == "{") kinds["GxO"]++;
        else kinds[o.kind]++;
    }
    CHECK(total == 351);
    CHECK(sizes[4] == 3);
    CHECK(sizes[24] == 3);
    CHECK(sizes[32] == 6);
    CHECK(sizes[8] == 9);
    CHECK(sizes[1] == 3);
    CHECK(kinds["GG"] == 3);
    CHECK(kinds["GxO"] == 9);
    // arithmetic cross-check: 3*(4+24) + 3*(32+32) + 9*8 + 3*1 = 351
    CHECK(3 * (4 + 24) + 3 * (32 + 32) + 9 * 8 + 3 * 1 == 351);

    // the 4-orbit inside (AA): the four published incident pairs
    const Lines27& L = lines27();
    auto abc = abc_orbits();
    for (auto& o : orbits) {
        if (o.members.size() != 4) continue;
        // check whether this is the A-orbit (lines meeting G12)
        auto [i, j] = pair_from_index(o.members[0]);
        auto& aorb = abc.at("G12");
        if (std::find(aorb.begin(), aorb.end(), i) == aorb.end()) continue;
        std::set<std::set<std::string>> got;
        for (int k : o.members) {
            auto [x, y] = pair_from_index(k);
            got.insert({L.names[size_t(x)], L.names[size_t(y)]});
        }
        std::set<std::set<std::string>> want{
            {"G46", "G35"}, {"G36", "G45"}, {"C1", "E2"}, {"C2", "E1"}};
        CHECK(got == want);
    }
    // incidence type is constant on every orbit (checked in construction),
    // and the cross-component orbits split by incidence
    for (auto& o : orbits)
        if (o.members.size() == 32)
            CHECK((o.kind.ends_with("-meet") || o.kind.ends_with("-skew")));
}

TEST_CASE("orbit census degrades when generators are dropped") {
    auto roots = stabilizer_roots();
    Group full = the_192_group();
    auto full_orbits = orbits_on_lines(full);
    for (size_t drop = 0; drop < roots.size(); ++drop) {
        std::vector<WeylElem> gens;
        for (size_t i = 0; i < roots.size(); ++i)
            if (i != drop) gens.push_back(reflection(roots[i]));
        Group sub = generate_group(gens);
        if (sub.order() == full.order()) continue;   // still the whole group
        auto so = orbits_on_lines(sub);
        CHECK(so.orbits.size() != full_orbits.orbits.size());
    }
}

TEST_CASE("component census tables") {
    auto c = yf2_component_census();
    CHECK(c.total_pairs() == 378);
    CHECK(c.total_families() == 63);
    std::map<std::pair<int,int>, int> rows;
    for (auto& r : c.pair_components) rows[{r.component_count, r.size_per_component}]++;
    CHECK(rows[{3, 24}] == 1);
    CHECK(rows[{3, 4}] == 1);
    CHECK(rows[{6, 32}] == 1);
    CHECK(rows[{12, 8}] == 1);
    CHECK(rows[{6, 1}] == 1);
    int comp_total = 0;
    for (auto& r : c.pair_components) comp_total += r.component_count;
    CHECK(comp_total == 30);
    int fam_comp = 0;
    for (auto& r : c.family_components) fam_comp += r.component_count;
    CHECK(fam_comp == 10);
    CHECK(3 * 1 + 6 * 8 + 1 * 12 == 63);
    CHECK(3 * 24 + 3 * 4 + 6 * 32 + 12 * 8 + 6 * 1 == 378);
}

TEST_CASE("S4 x (Z2)^3 structure of the order-192 group") {
    auto s = verify_s4_z2_structure();
    CHECK(s.order_192);
    CHECK(s.kernel_order_8);
    CHECK(s.kernel_abelian);
    CHECK(s.quotient_s4);
    CHECK(s.ok());
}

TEST_CASE("lattice-level checks for sums of incident (-1)-curves") {
    // for 56-mode pairs with C1.C2 = 1: (C1+C2)^2 = 0 and -K.(C1+C2) = 2
    const Curves56& C = curves56();
    PicClass mk = canonical_class(7);
    mk.a = -mk.a;
    for (int i = 0; i < 7; ++i) mk.b[size_t(i)] = -mk.b[size_t(i)];
    int checked = 0;
    for (int i = 0; i < 56 && checked < 300; ++i)
        for (int j = i + 1; j < 56 && checked < 300; ++j) {
            if (pairing(C.classes[size_t(i)], C.classes[size_t(j)]) != 1) continue;
            PicClass s;
            s.mode = 7;
            s.a = C.classes[size_t(i)].a + C.classes[size_t(j)].a;
            for (int k = 0; k < 7; ++k)
                s.b[size_t(k)] = C.classes[size_t(i)].b[size_t(k)] + C.classes[size_t(j)].b[size_t(k)];
            CHECK(pairing(s, s) == 0);
            CHECK(pairing(mk, s) == 2);
            ++checked;
        }
    CHECK(checked > 0);
}
